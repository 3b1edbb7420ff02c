"""High-precision reference values computed independently of the package."""
import mpmath as mp


def companion_rows(roots, dps=30):
    """Zeros of every derivative of prod(x - r), via mpmath companion-matrix eigenvalues.

    Returns a list of sorted float rows, row i holding the zeros of the i-th derivative.
    """
    with mp.workdps(dps):
        c = [mp.mpf(1)]
        for r in roots:
            nxt = [mp.mpf(0)] * (len(c) + 1)
            for i, a in enumerate(c):
                nxt[i + 1] += a
                nxt[i] -= mp.mpf(r) * a
            c = nxt
        rows = [sorted(float(r) for r in roots)]
        while len(c) > 2:
            c = [i * c[i] for i in range(1, len(c))]
            m = len(c) - 1
            if m == 1:
                rows.append([float(-c[0] / c[1])])
                continue
            comp = mp.zeros(m, m)
            for i in range(1, m):
                comp[i, i - 1] = 1
            for i in range(m):
                comp[i, m - 1] = -c[i] / c[-1]
            ev = mp.eig(comp, left=False, right=False)
            rows.append(sorted(float(mp.re(e)) for e in ev))
        return rows
