# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled graded product kernels; same contracts as ``_pykernels``."""

from fractions import Fraction


cdef inline long _gcd(long a, long b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline void _accumulate(dict target, long e, object val):
    cdef object v = target.get(e)
    v = val if v is None else v + val
    if v:
        target[e] = v
    else:
        target.pop(e, None)


cdef list _unpack(dict terms):
    cdef list out = []
    for key, c in terms.items():
        m, k = key
        out.append((<long>m[0], <long>m[1], <long>k, c))
    return out


def tropical_bracket(dict a, dict b, long order):
    cdef dict out = {}
    cdef list bl = _unpack(b)
    cdef long a1, b1, k1, a2, b2, k2, g1, det, s0, s1, room
    cdef list gl = [_gcd(t[0], t[1]) for t in bl]
    cdef Py_ssize_t j, nb = len(bl)
    cdef tuple t
    for key1, c1 in a.items():
        m1, k1 = key1
        a1 = m1[0]
        b1 = m1[1]
        g1 = _gcd(a1, b1)
        room = order - k1
        for j in range(nb):
            t = <tuple>bl[j]
            k2 = t[2]
            if k2 > room:
                continue
            a2 = t[0]
            b2 = t[1]
            det = a1 * b2 - b1 * a2
            if det == 0:
                continue
            s0 = a1 + a2
            s1 = b1 + b2
            key = ((s0, s1), k1 + k2)
            val = c1 * t[3] * Fraction(det * _gcd(s0, s1), g1 * <long>gl[j])
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return {key: c for key, c in out.items() if c}


def quantum_bracket(dict a, dict b, long order, bint keep_zero=False):
    cdef dict out = {}
    cdef list bl = _unpack(b)
    cdef long a1, b1, k1, a2, b2, k2, w, s0, s1, room, e
    cdef dict acc, c1d, c2d
    cdef tuple t
    for key1, c1 in a.items():
        m1, k1 = key1
        a1 = m1[0]
        b1 = m1[1]
        room = order - k1
        c1d = <dict>c1
        for t in bl:
            k2 = t[2]
            if k2 > room:
                continue
            a2 = t[0]
            b2 = t[1]
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
                acc = {}
                out[key] = acc
            c2d = <dict>t[3]
            for e1, x1 in c1d.items():
                for e2, x2 in c2d.items():
                    p = x1 * x2
                    e = <long>e1 + <long>e2
                    _accumulate(acc, e + w, p)
                    _accumulate(acc, e - w, -p)
    return {key: c for key, c in out.items() if c}


def quantum_product(dict a, dict b, long order):
    cdef dict out = {}
    cdef list bl = _unpack(b)
    cdef long a1, b1, k1, a2, b2, k2, w, room
    cdef dict acc, c1d, c2d
    cdef tuple t
    for key1, c1 in a.items():
        m1, k1 = key1
        a1 = m1[0]
        b1 = m1[1]
        room = order - k1
        c1d = <dict>c1
        for t in bl:
            k2 = t[2]
            if k2 > room:
                continue
            a2 = t[0]
            b2 = t[1]
            w = a1 * b2 - b1 * a2
            key = ((a1 + a2, b1 + b2), k1 + k2)
            acc = out.get(key)
            if acc is None:
                acc = {}
                out[key] = acc
            c2d = <dict>t[3]
            for e1, x1 in c1d.items():
                for e2, x2 in c2d.items():
                    _accumulate(acc, <long>e1 + <long>e2 + w, x1 * x2)
    return {key: c for key, c in out.items() if c}


def tropical_derivation(dict d, dict u, long order):
    cdef dict out = {}
    cdef list ul = _unpack(u)
    cdef long a1, b1, k1, a2, b2, k2, g1, det, room
    cdef tuple t
    for key1, c1 in d.items():
        m1, k1 = key1
        a1 = m1[0]
        b1 = m1[1]
        g1 = _gcd(a1, b1)
        room = order - k1
        for t in ul:
            k2 = t[2]
            if k2 > room:
                continue
            a2 = t[0]
            b2 = t[1]
            det = a1 * b2 - b1 * a2
            if det == 0:
                continue
            key = ((a1 + a2, b1 + b2), k1 + k2)
            val = c1 * t[3] * Fraction(det, g1)
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return {key: c for key, c in out.items() if c}


def tropical_product(dict a, dict b, long order):
    cdef dict out = {}
    cdef list bl = _unpack(b)
    cdef long a1, b1, k1, a2, b2, k2, room
    cdef tuple t
    for key1, c1 in a.items():
        m1, k1 = key1
        a1 = m1[0]
        b1 = m1[1]
        room = order - k1
        for t in bl:
            k2 = t[2]
            if k2 > room:
                continue
            a2 = t[0]
            b2 = t[1]
            key = ((a1 + a2, b1 + b2), k1 + k2)
            val = c1 * t[3]
            prev = out.get(key)
            out[key] = val if prev is None else prev + val
    return {key: c for key, c in out.items() if c}
