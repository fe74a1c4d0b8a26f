# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled permutation kernels.

Same contracts as charkit._pure; permutations cross the boundary as tuples of
0-based images and are packed into uint16 byte strings internally.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize, PyBytes_AS_STRING

BACKEND = "compiled"


cdef bytes _pack(p):
    cdef Py_ssize_t d = len(p)
    cdef bytes b = PyBytes_FromStringAndSize(NULL, d * sizeof(unsigned short))
    cdef unsigned short* buf = <unsigned short*> PyBytes_AS_STRING(b)
    cdef Py_ssize_t i
    for i in range(d):
        buf[i] = <unsigned short> p[i]
    return b


cdef tuple _unpack(bytes b, Py_ssize_t d):
    cdef const unsigned short* buf = <const unsigned short*> PyBytes_AS_STRING(b)
    cdef Py_ssize_t i
    return tuple([buf[i] for i in range(d)])


def closure(gens, cap=None):
    """Elements of the subgroup generated by `gens`, sorted.

    Raises ValueError when `cap` is given and the closure exceeds it.
    """
    cdef Py_ssize_t d = len(gens[0])
    cdef Py_ssize_t ng = len(gens)
    cdef long capv = -1 if cap is None else <long> cap
    if d > 65535:
        raise ValueError("degree too large for compiled kernel")
    cdef bytes gcat = b"".join([_pack(g) for g in gens])
    cdef const unsigned short* G = <const unsigned short*> PyBytes_AS_STRING(gcat)
    cdef bytes ident = _pack(tuple(range(d)))
    cdef dict index = {ident: 0}
    cdef list elems = [ident]
    cdef Py_ssize_t head = 0, i, k
    cdef const unsigned short* v
    cdef unsigned short* w
    cdef bytes vb, wb
    while head < len(elems):
        vb = elems[head]
        head += 1
        for k in range(ng):
            v = <const unsigned short*> PyBytes_AS_STRING(vb)
            wb = PyBytes_FromStringAndSize(NULL, d * sizeof(unsigned short))
            w = <unsigned short*> PyBytes_AS_STRING(wb)
            for i in range(d):
                w[i] = v[G[k * d + i]]
            if wb not in index:
                if capv >= 0 and len(elems) >= capv:
                    raise ValueError("order cap exceeded")
                index[wb] = len(elems)
                elems.append(wb)
    cdef list out = [_unpack(b, d) for b in elems]
    out.sort()
    return out


def conjugacy_partition(elements, gens):
    """Partition a closed, sorted element list into conjugacy classes.

    Returns a list of sorted index lists, one per class, in order of the
    smallest element index they contain.
    """
    cdef Py_ssize_t n = len(elements)
    cdef Py_ssize_t d = len(elements[0])
    cdef Py_ssize_t ng = len(gens)
    cdef list ebytes = [_pack(p) for p in elements]
    cdef dict index = {}
    cdef Py_ssize_t i, j, k, start
    for i in range(n):
        index[ebytes[i]] = i
    tables = []
    for g in gens:
        ginv = [0] * d
        for i in range(d):
            ginv[g[i]] = i
        tables.append(_pack(g) + _pack(tuple(ginv)))
    cdef bytes gcat = b"".join(tables)
    cdef const unsigned short* G = <const unsigned short*> PyBytes_AS_STRING(gcat)
    cdef bytearray vis = bytearray(n)
    cdef unsigned char[::1] V = vis
    cdef list classes = []
    cdef list orbit, stack
    cdef bytes xb, yb
    cdef const unsigned short* x
    cdef unsigned short* y
    for start in range(n):
        if V[start]:
            continue
        V[start] = 1
        orbit = [start]
        stack = [ebytes[start]]
        while stack:
            xb = stack.pop()
            for k in range(ng):
                x = <const unsigned short*> PyBytes_AS_STRING(xb)
                yb = PyBytes_FromStringAndSize(NULL, d * sizeof(unsigned short))
                y = <unsigned short*> PyBytes_AS_STRING(yb)
                # y = g * x * g^-1, i.e. y[i] = g[x[ginv[i]]]
                for i in range(d):
                    y[i] = G[2 * k * d + x[G[(2 * k + 1) * d + i]]]
                j = index[yb]
                if not V[j]:
                    V[j] = 1
                    orbit.append(j)
                    stack.append(yb)
        orbit.sort()
        classes.append(orbit)
    return classes
