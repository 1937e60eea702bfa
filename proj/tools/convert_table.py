#!/usr/bin/env python3
"""Convert an external table of partition polynomials into the crosscheck format.

Output: one line per polynomial, "n: c_h, ..., c_0", decimal integers with the
leading coefficient first. Coefficients must be those of the polynomial in
y = (24n - 1) x, i.e. prod (y - (24n - 1) P(tau_Q)) over the primitive classes.

Input accepted here: one polynomial per line as
    D  c_h c_{h-1} ... c_0
or
    D  [c_0, c_1, ..., c_h]      (ascending, bracketed)
with D = 1 - 24n. Other layouts need their own parse_line.
"""

import re
import sys


def parse_line(line):
    line = line.strip()
    if not line or line.startswith("#"):
        return None
    m = re.match(r"^(-?\d+)\s*[:\s]\s*\[(.*)\]\s*$", line)
    if m:
        D = int(m.group(1))
        coeffs = [int(x) for x in m.group(2).split(",")][::-1]
    else:
        parts = line.replace(",", " ").split()
        D, coeffs = int(parts[0]), [int(x) for x in parts[1:]]
    if D >= 0 or (1 - D) % 24:
        raise ValueError(f"discriminant {D} is not of the form 1 - 24n")
    return (1 - D) // 24, coeffs


def main():
    src = open(sys.argv[1]) if len(sys.argv) > 1 else sys.stdin
    for line in src:
        parsed = parse_line(line)
        if parsed:
            n, coeffs = parsed
            print(f"{n}: " + ", ".join(str(c) for c in coeffs))


if __name__ == "__main__":
    main()
