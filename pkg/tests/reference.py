"""Independent reference decoder used as a test oracle.

Deliberately re-implements the branch table from scratch over plain
strings, sharing no code with the package, so that agreement between the
two is meaningful.
"""


def _gamma(s):
    z = 0
    while z < len(s) and s[z] == "0":
        z += 1
    end = 2 * z + 1
    if z == len(s) or end > len(s):
        return None
    return int(s[z:end], 2), end


def _payload(body, make_output):
    head = _gamma(body)
    if head is None:
        return "needs_more_input", None
    n, used = head
    w = body[used : used + n - 1]
    if len(w) < n - 1:
        return "needs_more_input", None
    if used + n - 1 < len(body):
        return "halted_early", make_output(w)
    return "halt", make_output(w)


def ref_decode(program):
    """(status, output) with unlimited steps; submachine branch left symbolic."""
    if program.startswith("110"):
        return _payload(program[3:], lambda w: "0" * (int("1" + w, 2) - 1))
    if program.startswith("111"):
        if _gamma(program[3:]) is None:
            return "needs_more_input", None
        return "submachine", None
    if program.startswith("10"):
        return _payload(program[2:], lambda w: w + w)
    if program.startswith("0"):
        return _payload(program[1:], lambda w: w)
    return "needs_more_input", None  # "", "1", "11"


def ref_halting_set(max_len):
    """All (program, output) pairs with status halt, up to max_len bits."""
    out = []
    for length in range(1, max_len + 1):
        for val in range(1 << length):
            p = format(val, f"0{length}b")
            status, s = ref_decode(p)
            if status == "halt":
                out.append((p, s))
    return out


def ref_steps(program, output):
    """Step count for a halting run: read each bit, emit each bit, halt."""
    return len(program) + len(output) + 1
