"""Hand transcription of the printed small matrices M^{s,t}_d (row = output index, column = input index)."""

from ..exactalg import RatFunc, q, z

ONE = RatFunc(1)
ZERO = RatFunc(0)


def m11_1():
    d = q * z + 1
    return [[(q + 1) * z / d, (1 - z) / d],
            [q * (z - 1) / d, (q + 1) / d]]


def m12_1():
    d = q * z**2 + 1
    return [[(q + 1) * z / d, (1 - z**2) / d],
            [q * (z**2 - 1) / d, (q + 1) * z / d]]


def m22_1():
    return [[ZERO, 1 / (1 - z)],
            [q / (z - 1), ZERO]]


def m11_2():
    d = (q * z + 1) * (z * q**2 + 1)
    return [
        [(q + 1) * (q**2 + 1) * z**2 / d, -(q + 1) * (z - 1) * z / d, (z - 1) * (q * z - 1) / d],
        [q * (q + 1) * (q**2 + 1) * (z - 1) * z / d,
         (z * q**3 + 2 * z * q**2 - q**2 - z**2 * q + 2 * z * q + z) / d,
         -(q + 1) * (q**2 + 1) * (z - 1) / d],
        [q**2 * (z - 1) * (q * z - 1) / d, q * (q + 1) * (z - 1) / d, (q + 1) * (q**2 + 1) / d],
    ]


def m12_2():
    d = (q * z**2 + 1) * (z**2 * q**3 + 1)
    return [
        [(q + 1) * z**2 * (z**2 * q**3 - z**2 * q**2 + q**2 + 1) / d,
         -(q + 1) * (z - 1) * z * (z + 1) / d,
         (z - 1) * (z + 1) * (q * z - 1) * (q * z + 1) / d],
        [q * (q + 1) * (q**2 + 1) * (z - 1) * z * (z + 1) / d,
         (z**2 * q**4 + z**2 * q**3 - z**4 * q**2 + 2 * z**2 * q**2 - q**2 + z**2 * q + z**2) / d,
         -q * (q + 1) * (q**2 + 1) * (z - 1) * z * (z + 1) / d],
        [q**2 * (z - 1) * (z + 1) * (q * z - 1) * (q * z + 1) / d,
         q**2 * (q + 1) * (z - 1) * z * (z + 1) / d,
         (q + 1) * (z**2 * q**3 + z**2 * q - q + 1) / d],
    ]


def m22_2():
    d = q**2 * z - 1
    return [
        [(q**2 - 1) * z / d, ZERO, (z - 1) / d],
        [ZERO, (q**2 - z) / d, ZERO],
        [q**2 * (z - 1) / d, ZERO, (q**2 - 1) / d],
    ]


def m22_3():
    d = (z - 1) * (q**4 * z - 1)
    return [
        [ZERO, (z - q**2 * z) / d, ZERO, (1 - q**2 * z) / d],
        [q * (q**6 - 1) * z / d, ZERO, (q * z - q**3) / d, ZERO],
        [ZERO, q**2 * (q**2 - z) / d, ZERO, (1 - q**6) / d],
        [q**3 * (q**2 * z - 1) / d, ZERO, q * (q**2 - 1) / d, ZERO],
    ]


EXAMPLE_MATRICES = {
    ((1, 1), 1): m11_1,
    ((1, 2), 1): m12_1,
    ((2, 2), 1): m22_1,
    ((1, 1), 2): m11_2,
    ((1, 2), 2): m12_2,
    ((2, 2), 2): m22_2,
    ((2, 2), 3): m22_3,
}


def check_examples() -> "CheckReport":
    """build_M against the transcribed matrices, plus the trivial degree-0 block of each closed spec."""
    from ..reduction import CLOSED_SPECS, build_M
    from .report import CheckReport, same

    rep = CheckReport("small reduced matrices", "Example matrices M^{s,t}_d", {})
    cases = [((spec, 0), lambda: [[ONE]]) for spec in CLOSED_SPECS] + sorted(EXAMPLE_MATRICES.items())
    for (spec, d), expected_fn in cases:
        def body(spec=spec, d=d, expected_fn=expected_fn):
            got, want = build_M(spec, d), expected_fn()
            for r in range(d + 1):
                for c in range(d + 1):
                    if not same(got[r][c], want[r][c]):
                        return {"index": [r, c], "lhs": got[r][c].to_text(), "rhs": want[r][c].to_text()}
            return None

        rep.run(f"M^{{{spec[0]},{spec[1]}}}_{d}", body)
    return rep


def check_printed_m22_2_spectrum() -> "CheckReport":
    """Eigenvectors of the transcribed M^{2,2}_2, found by hand, certified by direct application."""
    from ..identify import certify
    from .report import CheckReport

    lam = (q**2 - z) / (q**2 * z - 1)
    rep = CheckReport("spectrum of the printed M^{2,2}_2", "Example matrices M^{s,t}_d",
                      {"spectrum": ["1", lam.to_text(), lam.to_text()]})
    M = m22_2()
    cases = [
        ("odd (1,1)", {(1, 1): ONE}, lam),
        ("even (0,2)+(2,0)", {(0, 2): ONE, (2, 0): ONE}, ONE),
        ("even (0,2)-q^2(2,0)", {(0, 2): ONE, (2, 0): -(q**2)}, lam),
    ]
    for label, vec, value in cases:
        rep.run(label, lambda vec=vec, value=value: certify(M, 2, vec, value))
    return rep
