"""Independent brute-force oracles used to pin expected values.

Nothing here shares code paths with the package: orbits are enumerated by
reflection BFS, Weyl groups by closing permutations of the root set, and
module dimensions by Freudenthal's recursion over the weight system.
"""

from __future__ import annotations

from fractions import Fraction

from sphersub.rootsys import SimpleType, cartan_matrix, root_lengths, root_system


def reflect(cartan, coeffs, i):
    """Image of a weight (fundamental coordinates) under the i-th reflection."""
    c = coeffs[i]
    return tuple(coeffs[j] - c * cartan[i][j] for j in range(len(coeffs)))


def orbit_by_reflections(t: SimpleType, coeffs) -> set[tuple[int, ...]]:
    cartan = cartan_matrix(t)
    seen = {tuple(coeffs)}
    frontier = [tuple(coeffs)]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(t.rank):
                img = reflect(cartan, w, i)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return seen


def brute_weyl_order(t: SimpleType) -> int:
    """Order of the group generated by simple reflections on the root set."""
    rs = root_system(t)
    roots = list(rs.positive_roots) + [tuple(-c for c in r) for r in rs.positive_roots]
    index = {r: i for i, r in enumerate(roots)}
    n = t.rank
    cartan = rs.cartan

    def reflect_root(root, i):
        pairing = sum(root[j] * cartan[j][i] for j in range(n))
        img = list(root)
        img[i] -= pairing
        return tuple(img)

    gens = []
    for i in range(n):
        gens.append(tuple(index[reflect_root(r, i)] for r in roots))
    identity = tuple(range(len(roots)))
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = tuple(s[g[k]] for k in range(len(roots)))
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def dominant_representative(cartan, coeffs):
    w = tuple(coeffs)
    while True:
        neg = next((i for i, c in enumerate(w) if c < 0), None)
        if neg is None:
            return w
        w = reflect(cartan, w, neg)


def freudenthal_dim(t: SimpleType, coeffs, box: int = 12) -> int:
    """Module dimension by summing Freudenthal multiplicities over the orbit
    decomposition of the weight system (characteristic zero)."""
    rs = root_system(t)
    n = t.rank
    cartan = rs.cartan
    d = root_lengths(t)
    pos = rs.positive_roots
    coroots = [rs.coroot_coords(i) for i in range(len(pos))]
    alpha_fund = [
        tuple(sum(pos[a][j] * cartan[j][i] for j in range(n)) for i in range(n))
        for a in range(len(pos))
    ]  # positive roots in fundamental coordinates
    lam = tuple(coeffs)

    # dominant weights below lam: lam - sum c_a alpha_a over a coefficient box
    dominants = {}
    simple_fund = [tuple(cartan[i][j] for j in range(n)) for i in range(n)]

    def scan(idx, current, depth):
        if idx == n:
            if all(c >= 0 for c in current):
                dominants[current] = depth
            return
        cur = current
        for k in range(box + 1):
            scan(idx + 1, cur, depth + k)
            cur = tuple(a - b for a, b in zip(cur, simple_fund[idx]))

    scan(0, lam, 0)

    def inner_with_root(mcoeffs, a):
        # (mu, alpha_a) up to the global normalization: d_alpha * <mu, alpha^vee>
        return rs.lengths[a] * sum(m * k for m, k in zip(mcoeffs, coroots[a]))

    weight_set = set()
    orbit_of = {}
    for mu in dominants:
        orb = orbit_by_reflections(t, mu)
        orbit_of[mu] = orb
        weight_set |= orb

    mult = {lam: 1}
    rho = tuple([1] * n)
    order = sorted(dominants, key=lambda m: dominants[m])
    for mu in order:
        if mu == lam:
            continue
        total = 0
        for a in range(len(pos)):
            k = 1
            while True:
                nu = tuple(m + k * c for m, c in zip(mu, alpha_fund[a]))
                if nu not in weight_set:
                    break
                rep = dominant_representative(cartan, nu)
                total += mult[rep] * inner_with_root(nu, a)
                k += 1
        lam_rho = tuple(a + b for a, b in zip(lam, rho))
        mu_rho = tuple(a + b for a, b in zip(mu, rho))
        # (lam+rho, lam+rho) - (mu+rho, mu+rho) = (lam+mu+2rho, lam-mu)
        diff = tuple(a - b for a, b in zip(lam, mu))
        # express lam-mu in simple-root coordinates (rational solve)
        croot = _solve_root_coords(cartan, diff)
        summ = tuple(a + b for a, b in zip(lam_rho, mu_rho))
        denom = sum(Fraction(c) * d[i] * summ[i] for i, c in enumerate(croot))
        m = Fraction(2 * total, 1) / denom
        assert m.denominator == 1
        mult[mu] = int(m)
    return sum(mult[mu] * len(orbit_of[mu]) for mu in dominants)


def _solve_root_coords(cartan, fund_coeffs):
    """Solve (A^T) c = m for the simple-root coordinates of a weight."""
    n = len(fund_coeffs)
    mat = [[Fraction(cartan[j][i]) for j in range(n)] for i in range(n)]
    vec = [Fraction(v) for v in fund_coeffs]
    for col in range(n):
        piv = next(r for r in range(col, n) if mat[r][col])
        mat[col], mat[piv] = mat[piv], mat[col]
        vec[col], vec[piv] = vec[piv], vec[col]
        lead = mat[col][col]
        mat[col] = [x / lead for x in mat[col]]
        vec[col] /= lead
        for r in range(n):
            if r != col and mat[r][col]:
                f = mat[r][col]
                mat[r] = [x - f * y for x, y in zip(mat[r], mat[col])]
                vec[r] -= f * vec[col]
    return vec
