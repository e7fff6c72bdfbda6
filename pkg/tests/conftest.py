import math

import mpmath

from fracwell.specfun import a_mu


def hypersingular_oracle(psi, dpsi, mu, x, dps=30):
    """Operator applied to ``psi`` (zero outside [-1, 1]) by subtracting the singularity.

    Writes ``A int (psi(x) - psi(u)) / |x - u|^(1+mu) du`` as the exterior
    contribution, a regular remainder after removing the first-order Taylor
    part, and the principal value of that first-order part in closed form.
    """
    with mpmath.workdps(dps):
        mu_m = mpmath.mpf(mu)
        x_m = mpmath.mpf(x)
        p0, p1 = psi(x_m), dpsi(x_m)
        p2 = mpmath.diff(dpsi, x_m)
        exterior = p0 * ((1 + x_m) ** (-mu_m) + (1 - x_m) ** (-mu_m)) / mu_m

        def remainder(sign, h):
            if h < mpmath.mpf(10) ** (-dps // 3):
                return p2 / 2 * h ** (1 - mu_m)
            return (psi(x_m + sign * h) - p0 - p1 * sign * h) / h ** (1 + mu_m)

        # h = s**(1/(2-mu)) flattens the h**(1-mu) behaviour at u = x.
        power = 1 / (2 - mu_m)

        def side(sign, length):
            def integrand(s):
                h = s ** power
                return remainder(sign, h) * power * s ** (power - 1)
            return mpmath.quad(integrand, [0, length ** (2 - mu_m)])

        regular = side(1, 1 - x_m) + side(-1, 1 + x_m)
        if mu == 1:
            pv = mpmath.log((1 - x_m) / (1 + x_m))
        else:
            pv = ((1 - x_m) ** (1 - mu_m) - (1 + x_m) ** (1 - mu_m)) / (1 - mu_m)
        return float(a_mu(mu) * (exterior - regular - p1 * pv))


def cos_mode(k):
    lam = mpmath.pi * (2 * k + 1) / 2
    return (lambda u: mpmath.cos(lam * u)), (lambda u: -lam * mpmath.sin(lam * u))


def sin_mode(k):
    b = mpmath.pi * k
    return (lambda u: mpmath.sin(b * u)), (lambda u: b * mpmath.cos(b * u))


def even_wavenumber(k):
    return math.pi * (2 * k + 1) / 2


# -- acceptance summary ---------------------------------------------------------

ACCEPTANCE = {}


def record(criterion, part, ok, detail):
    """Store one acceptance check; the terminal summary prints one line per criterion."""
    ACCEPTANCE.setdefault(criterion, []).append((part, bool(ok), detail))
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[criterion]
        status = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        terminalreporter.write_line(f"criterion {criterion:>2}: {status}")
        for part, ok, detail in parts:
            terminalreporter.write_line(f"    [{'pass' if ok else 'FAIL'}] {part}: {detail}")
