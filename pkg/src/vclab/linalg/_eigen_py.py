"""Pure-Python symmetric eigensolver (Householder tridiagonalization + implicit QL).

This is the fallback twin of the compiled ``_eigen`` extension. Both follow
the classical EISPACK ``tred2``/``tql2`` pair, so they agree to rounding.
Inner loops that are plain BLAS-1/BLAS-2 operations are vectorized with
numpy; the QL sweep itself stays scalar.
"""

import math

import numpy as np

_EPS = 2.0 ** -52


def tridiagonalize(a, vectors=True):
    """Reduce a symmetric matrix to tridiagonal form.

    Returns ``(V, d, e)`` with ``d`` the diagonal, ``e`` the subdiagonal
    (``e[0] == 0``) and ``V`` the accumulated orthogonal transform (or
    ``None`` when ``vectors`` is false).
    """
    V = np.array(a, dtype=np.float64, copy=True)
    n = V.shape[0]
    d = np.zeros(n)
    e = np.zeros(n)
    if n == 0:
        return (V if vectors else None), d, e
    d[:] = V[n - 1, :]
    for i in range(n - 1, 0, -1):
        h = 0.0
        scale = float(np.abs(d[:i]).sum())
        if scale == 0.0:
            e[i] = d[i - 1]
            d[:i] = V[i - 1, :i]
            V[i, :i] = 0.0
            V[:i, i] = 0.0
        else:
            d[:i] /= scale
            h = float(d[:i] @ d[:i])
            f = d[i - 1]
            g = math.sqrt(h)
            if f > 0:
                g = -g
            e[i] = scale * g
            h -= f * g
            d[i - 1] = f - g
            # symmetric product with the lower triangle of V[:i, :i]
            low = np.tril(V[:i, :i])
            sym = low + low.T - np.diag(np.diag(low))
            V[:i, i] = d[:i]
            e[:i] = sym @ d[:i]
            e[:i] /= h
            f = float(e[:i] @ d[:i])
            hh = f / (h + h)
            e[:i] -= hh * d[:i]
            upd = np.outer(e[:i], d[:i]) + np.outer(d[:i], e[:i])
            V[:i, :i] -= np.tril(upd)
            d[:i] = V[i - 1, :i]
            V[i, :i] = 0.0
        d[i] = h

    if vectors:
        for i in range(n - 1):
            V[n - 1, i] = V[i, i]
            V[i, i] = 1.0
            h = d[i + 1]
            if h != 0.0:
                d[: i + 1] = V[: i + 1, i + 1] / h
                g = V[: i + 1, i + 1] @ V[: i + 1, : i + 1]
                V[: i + 1, : i + 1] -= np.outer(d[: i + 1], g)
            V[: i + 1, i + 1] = 0.0
        d[:] = V[n - 1, :]
        V[n - 1, :] = 0.0
        V[n - 1, n - 1] = 1.0
    else:
        d[:] = np.diag(V)
    e[0] = 0.0
    return (V if vectors else None), d, e


def ql_implicit(d, e, V=None, max_sweeps=60):
    """Diagonalize a tridiagonal matrix in place by the implicit-shift QL method.

    ``d`` holds the diagonal and ``e`` the subdiagonal in ``tridiagonalize``
    layout. If ``V`` is given its columns are rotated along. Eigenvalues are
    returned sorted ascending together with the matching columns of ``V``.
    """
    d = np.array(d, dtype=np.float64, copy=True)
    e = np.array(e, dtype=np.float64, copy=True)
    n = d.shape[0]
    if n == 0:
        return d, V
    e[:-1] = e[1:]
    e[n - 1] = 0.0
    f = 0.0
    # negligibility is judged against the norm of the whole tridiagonal
    # matrix; a running maximum lets denormal noise in leading entries stall
    tst1 = float((np.abs(d) + np.abs(e)).max())
    if tst1 == 0.0:
        return ql_sorted(d, V)
    dl = d.tolist()
    el = e.tolist()
    for l in range(n):
        m = l
        while m < n:
            if abs(el[m]) <= _EPS * tst1:
                break
            m += 1
        if m > l:
            sweeps = 0
            while True:
                sweeps += 1
                if sweeps > max_sweeps:
                    raise np.linalg.LinAlgError("QL iteration did not converge")
                g = dl[l]
                p = (dl[l + 1] - g) / (2.0 * el[l])
                r = math.hypot(p, 1.0)
                if p < 0:
                    r = -r
                dl[l] = el[l] / (p + r)
                dl[l + 1] = el[l] * (p + r)
                dl1 = dl[l + 1]
                h = g - dl[l]
                for i in range(l + 2, n):
                    dl[i] -= h
                f += h
                p = dl[m]
                c = 1.0
                c2 = c
                c3 = c
                el1 = el[l + 1]
                s = 0.0
                s2 = 0.0
                for i in range(m - 1, l - 1, -1):
                    c3 = c2
                    c2 = c
                    s2 = s
                    g = c * el[i]
                    h = c * p
                    r = math.hypot(p, el[i])
                    el[i + 1] = s * r
                    s = el[i] / r
                    c = p / r
                    p = c * dl[i] - s * g
                    dl[i + 1] = h + s * (c * g + s * dl[i])
                    if V is not None:
                        hv = V[:, i + 1].copy()
                        V[:, i + 1] = s * V[:, i] + c * hv
                        V[:, i] = c * V[:, i] - s * hv
                p = -s * s2 * c3 * el1 * el[l] / dl1
                el[l] = s * p
                dl[l] = c * p
                if not abs(el[l]) > _EPS * tst1:
                    break
        dl[l] = dl[l] + f
        el[l] = 0.0
    return ql_sorted(np.array(dl), V)


def ql_sorted(d, V):
    order = np.argsort(d, kind="stable")
    d = d[order]
    if V is not None:
        V = V[:, order]
    return d, V


def eigh(a, vectors=True):
    """Eigenvalues (ascending) and optionally eigenvectors of a symmetric matrix."""
    V, d, e = tridiagonalize(a, vectors=vectors)
    w, V = ql_implicit(d, e, V)
    return w, V
