"""High-precision reference computations that share no code path with pfsc.

Everything here is evaluated with mpmath from explicit definitions: finite
hypergeometric sums, Lagrange product forms expanded in powers of (x + 1),
and the term-wise Riemann-Liouville power rule.
"""

from __future__ import annotations

import mpmath as mp

DPS = 60


def jacobi_explicit(n, alpha, beta, x):
    r"""Explicit finite sum

    .. math::

        P_n^{(\alpha, \beta)}(x) = \frac{\Gamma(\alpha + n + 1)}{n! \, \Gamma(\alpha + \beta + n + 1)}
            \sum_{m = 0}^n \binom{n}{m}
            \frac{\Gamma(\alpha + \beta + n + m + 1)}{\Gamma(\alpha + m + 1)}
            \left(\frac{x - 1}{2}\right)^m.
    """
    with mp.workdps(DPS):
        a, b, x = mp.mpf(alpha), mp.mpf(beta), mp.mpf(x)
        pref = mp.gamma(a + n + 1) / (mp.factorial(n) * mp.gamma(a + b + n + 1))
        s = mp.fsum(
            mp.binomial(n, m) * mp.gamma(a + b + n + m + 1) / mp.gamma(a + m + 1)
            * ((x - 1) / 2) ** m
            for m in range(n + 1)
        )
        return pref * s


def jacobi_in_shifted_powers(n, alpha, beta):
    """Coefficients ``c_k`` with :math:`P_n^{(\\alpha, \\beta)}(x) = \\sum_k c_k (x + 1)^k`.

    Uses :math:`P_n^{(\\alpha, \\beta)}(x) = (-1)^n P_n^{(\\beta, \\alpha)}(-x)` and
    the explicit sum in powers of :math:`(-x - 1) / 2`.
    """
    with mp.workdps(DPS):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        pref = (-1) ** n * mp.gamma(b + n + 1) / (mp.factorial(n) * mp.gamma(a + b + n + 1))
        return [
            pref * mp.binomial(n, m) * mp.gamma(a + b + n + m + 1) / mp.gamma(b + m + 1)
            * (mp.mpf(-1) / 2) ** m
            for m in range(n + 1)
        ]


def poly_from_roots_shifted(roots):
    """Monomial coefficients (in ``t = x + 1``) of :math:`\\prod (x - r)`."""
    coeffs = [mp.mpf(1)]
    for r in roots:
        tr = mp.mpf(r) + 1
        new = [mp.mpf(0)] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] += c
            new[k] -= tr * c
        coeffs = new
    return coeffs


def lagrange_fractional_powers(mu, nodes, j):
    """Power expansion of the fractional cardinal function on *nodes*:
    returns pairs ``(c, sigma)`` with :math:`\\ell_j^\\mu = \\sum c (x + 1)^\\sigma`."""
    with mp.workdps(DPS):
        mu = mp.mpf(mu)
        xj = mp.mpf(nodes[j])
        others = [xn for i, xn in enumerate(nodes) if i != j]
        denom = mp.fprod([xj - mp.mpf(xn) for xn in others]) * (xj + 1) ** mu
        poly = poly_from_roots_shifted(others)
        return [(c / denom, mu + k) for k, c in enumerate(poly)]


def rl_derivative_powers(terms, nu):
    """Term-wise left Riemann-Liouville derivative of a sum of powers of (x + 1)."""
    with mp.workdps(DPS):
        nu = mp.mpf(nu)
        out = []
        for c, s in terms:
            shifted = s + 1 - nu
            # 1 / Gamma vanishes at non-positive integers
            if shifted <= 0 and abs(shifted - mp.nint(shifted)) < mp.mpf(10) ** (-30):
                continue
            out.append((c * mp.gamma(s + 1) / mp.gamma(shifted), s - nu))
        return out


def eval_powers(terms, x):
    with mp.workdps(DPS):
        t = mp.mpf(x) + 1
        return mp.fsum(c * t**s for c, s in terms)


def weighted_monomial_moment(alpha, beta, k):
    r""":math:`\int_{-1}^1 (1 - x)^\alpha (1 + x)^\beta x^k \, dx` via
    :math:`x^k = \sum_m \binom{k}{m} (1 + x)^m (-1)^{k - m}` and Beta integrals."""
    # the alternating sum cancels roughly k * log10(4) digits
    with mp.workdps(DPS + k):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        return mp.fsum(
            mp.binomial(k, m) * (-1) ** (k - m)
            * mp.mpf(2) ** (a + b + m + 1) * mp.beta(a + 1, b + m + 1)
            for m in range(k + 1)
        )


def weight_mass(alpha, beta):
    with mp.workdps(DPS):
        a, b = mp.mpf(alpha), mp.mpf(beta)
        return mp.mpf(2) ** (a + b + 1) * mp.gamma(a + 1) * mp.gamma(b + 1) / mp.gamma(a + b + 2)


def log_gamma_ratio_stirling(z, shift):
    r""":math:`\ln \Gamma(z + shift) - \ln \Gamma(z)` from the Stirling series with
    four correction terms (accurate to far below 1e-16 for ``z ~ 1000``)."""
    with mp.workdps(DPS):
        def stirling(w):
            w = mp.mpf(w)
            return (
                (w - mp.mpf(1) / 2) * mp.log(w) - w + mp.log(2 * mp.pi) / 2
                + 1 / (12 * w) - 1 / (360 * w**3) + 1 / (1260 * w**5) - 1 / (1680 * w**7)
            )
        return stirling(mp.mpf(z) + shift) - stirling(z)
