"""Hot loops of the truncated-series arithmetic.

Series live in dense row-major arrays.  Because the storage is row-major,
exponents add like flat indices whenever the componentwise sum stays inside
the caps: ``flat(e + e') == flat(e) + flat(e')``.  The numba kernels rely on
that to avoid any index decoding in the inner loop.

Each operation exists twice: a numba kernel over the nonzero support, and a
numpy version built from shifted slice views.  ``mul`` and ``reciprocal``
dispatch on :func:`trio_osc._accel.use_numba`.
"""

import numpy as np

from ._accel import njit, use_numba


@njit(cache=True, nogil=True)
def _mul_nb(fv, fi, gv, gi, multi, caps, n_out):
    out = np.zeros(n_out)
    k = caps.shape[0]
    for a in range(fv.shape[0]):
        ia = fi[a]
        for b in range(gv.shape[0]):
            ib = gi[b]
            ok = True
            for d in range(k):
                if multi[ia, d] + multi[ib, d] > caps[d]:
                    ok = False
                    break
            if ok:
                out[ia + ib] += fv[a] * gv[b]
    return out


@njit(cache=True, nogil=True)
def _reciprocal_nb(fv, fi, f0, multi, n_out):
    g = np.zeros(n_out)
    g[0] = 1.0 / f0
    k = multi.shape[1]
    for e in range(1, n_out):
        acc = 0.0
        for t in range(fv.shape[0]):
            idx = fi[t]
            if idx == 0 or idx > e:
                continue
            ok = True
            for d in range(k):
                if multi[idx, d] > multi[e, d]:
                    ok = False
                    break
            if ok:
                acc += fv[t] * g[e - idx]
        g[e] = -acc / f0
    return g


def _support(arr):
    flat = arr.ravel()
    idx = np.flatnonzero(flat)
    return flat[idx].copy(), idx.astype(np.int64)


def _multi_table(shape):
    return np.indices(shape).reshape(len(shape), -1).T.astype(np.int64).copy()


def _shift_add(out, src, offset, scale):
    """out[offset + e] += scale * src[e] for every e that stays in bounds."""
    dst = tuple(slice(o, None) for o in offset)
    cut = tuple(slice(0, s - o) for s, o in zip(src.shape, offset))
    out[dst] += scale * src[cut]


def _mul_np(f, g):
    # iterate over the sparser operand
    if np.count_nonzero(f) > np.count_nonzero(g):
        f, g = g, f
    out = np.zeros_like(g)
    for e in zip(*np.nonzero(f)):
        _shift_add(out, g, e, f[e])
    return out


def _reciprocal_np(f):
    shape = f.shape
    f0 = f.flat[0]
    degree = np.indices(shape).sum(axis=0)
    terms = [(e, f[e]) for e in zip(*np.nonzero(f)) if any(e)]
    g = np.zeros(shape)
    g.flat[0] = 1.0 / f0
    for level in range(1, int(degree.max()) + 1 if degree.size else 1):
        acc = np.zeros(shape)
        for e, val in terms:
            _shift_add(acc, g, e, val)
        mask = degree == level
        g[mask] = -acc[mask] / f0
    return g


def mul(f, g):
    """Truncated Cauchy product of two equally shaped coefficient arrays."""
    if not use_numba():
        return _mul_np(f, g)
    shape = f.shape
    fv, fi = _support(f)
    gv, gi = _support(g)
    out = _mul_nb(fv, fi, gv, gi, _multi_table(shape), np.asarray(shape, dtype=np.int64) - 1, f.size)
    return out.reshape(shape)


def reciprocal(f):
    """Coefficients of 1/f truncated to the shape of ``f``; requires f[0] != 0."""
    if not use_numba():
        return _reciprocal_np(f)
    fv, fi = _support(f)
    out = _reciprocal_nb(fv, fi, float(f.flat[0]), _multi_table(f.shape), f.size)
    return out.reshape(f.shape)


def mul_reference(f, g):
    """Naive double loop over all index pairs, kept as an oracle for tests."""
    shape = f.shape
    out = np.zeros(shape)
    for ea in np.ndindex(shape):
        if f[ea] == 0.0:
            continue
        for eb in np.ndindex(shape):
            e = tuple(a + b for a, b in zip(ea, eb))
            if all(x < s for x, s in zip(e, shape)):
                out[e] += f[ea] * g[eb]
    return out
