"""Pure-Python graded product kernels.

All kernels take sparse term maps keyed by ``((a, b), k)`` -- lattice grade
and t-order -- and drop every output term with t-order above ``order``.
Quantum coefficients are raw Laurent dicts ``{doubled_exp: Fraction}``.
:mod:`scatterdiag._ckernels` is a compiled twin with identical results.
"""

from fractions import Fraction
from math import gcd


def tropical_bracket(a, b, order):
    """Bracket in the tropical algebra with primitive-perp storage.

    A stored coefficient ``c`` at grade ``m = g*u`` means
    ``c * z^m d_{perp(u)} = (c/g) * z^m d_{perp(m)}``, and
    ``[z^m d_perp(m), z^m' d_perp(m')] = det(m, m') z^(m+m') d_perp(m+m')``.
    """
    out = {}
    bl = [(m2[0], m2[1], k2, c2, gcd(m2[0], m2[1])) for (m2, k2), c2 in b.items()]
    for (m1, k1), c1 in a.items():
        a1, b1 = m1
        g1 = gcd(a1, b1)
        room = order - k1
        for a2, b2, k2, c2, g2 in bl:
            if k2 > room:
                continue
            det = a1 * b2 - b1 * a2
            if det == 0:
                continue
            s0 = a1 + a2
            s1 = b1 + b2
            key = ((s0, s1), k1 + k2)
            val = c1 * c2 * Fraction(det * gcd(s0, s1), g1 * g2)
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return {key: c for key, c in out.items() if c}


def _accumulate(target, e, val):
    v = target.get(e)
    v = val if v is None else v + val
    if v:
        target[e] = v
    else:
        target.pop(e, None)


def quantum_bracket(a, b, order, keep_zero=False):
    """Commutator in the quantum torus: ``(q^(w/2) - q^(-w/2)) z^(m+m')``, w = det(m, m')."""
    out = {}
    bl = [(m2[0], m2[1], k2, c2) for (m2, k2), c2 in b.items()]
    for (m1, k1), c1 in a.items():
        a1, b1 = m1
        room = order - k1
        for a2, b2, k2, c2 in bl:
            if k2 > room:
                continue
            w = a1 * b2 - b1 * a2
            if w == 0:
                continue
            s0 = a1 + a2
            s1 = b1 + b2
            if not keep_zero and s0 == 0 and s1 == 0:
                continue
            key = ((s0, s1), k1 + k2)
            acc = out.get(key)
            if acc is None:
                acc = out[key] = {}
            for e1, x1 in c1.items():
                for e2, x2 in c2.items():
                    p = x1 * x2
                    e = e1 + e2
                    _accumulate(acc, e + w, p)
                    _accumulate(acc, e - w, -p)
    return {key: c for key, c in out.items() if c}


def quantum_product(a, b, order):
    """Twisted product ``z^m z^m' = q^(det(m,m')/2) z^(m+m')`` in the quantum torus."""
    out = {}
    bl = [(m2[0], m2[1], k2, c2) for (m2, k2), c2 in b.items()]
    for (m1, k1), c1 in a.items():
        a1, b1 = m1
        room = order - k1
        for a2, b2, k2, c2 in bl:
            if k2 > room:
                continue
            w = a1 * b2 - b1 * a2
            key = ((a1 + a2, b1 + b2), k1 + k2)
            acc = out.get(key)
            if acc is None:
                acc = out[key] = {}
            for e1, x1 in c1.items():
                for e2, x2 in c2.items():
                    _accumulate(acc, e1 + e2 + w, x1 * x2)
    return {key: c for key, c in out.items() if c}


def tropical_derivation(d, u, order):
    """Apply the derivation ``sum c z^m d_{perp(u_m)}`` to a torus element."""
    out = {}
    ul = [(m2[0], m2[1], k2, c2) for (m2, k2), c2 in u.items()]
    for (m1, k1), c1 in d.items():
        a1, b1 = m1
        g1 = gcd(a1, b1)
        room = order - k1
        for a2, b2, k2, c2 in ul:
            if k2 > room:
                continue
            det = a1 * b2 - b1 * a2
            if det == 0:
                continue
            key = ((a1 + a2, b1 + b2), k1 + k2)
            val = c1 * c2 * Fraction(det, g1)
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return {key: c for key, c in out.items() if c}


def tropical_product(a, b, order):
    """Commutative product in the formal torus ring."""
    out = {}
    bl = [(m2[0], m2[1], k2, c2) for (m2, k2), c2 in b.items()]
    for (m1, k1), c1 in a.items():
        a1, b1 = m1
        room = order - k1
        for a2, b2, k2, c2 in bl:
            if k2 > room:
                continue
            key = ((a1 + a2, b1 + b2), k1 + k2)
            val = c1 * c2
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return {key: c for key, c in out.items() if c}
