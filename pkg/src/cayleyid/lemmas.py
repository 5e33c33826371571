"""Exact checks of the auxiliary lemmas behind the Cayley-type identities.

Every check returns ``True`` iff the identity holds exactly for the given
parameters.  Each one computes the two sides by different means: the left
side by brute force (enumeration, Berezin integration or operator
application) and the right side from the closed form.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations, permutations, product as cartesian
from math import comb, factorial
from typing import Callable, Sequence

from .grassmann import GContext, GElement, complex_measure, product, real_measure, subst_poly
from .matrixfun import Matrix, adjugate, complement, det, inverse, pf, symplectic
from .powers import PowerElement
from .ring import S, Poly, Ring, VarId, alpha, param, rat, x, y
from .weyl import WeylOp, expand_det


# --- shared helpers -----------------------------------------------------------


def binomial_poly(upper: Poly, k: int) -> Poly:
    """``binom(upper, k)`` as a polynomial in whatever ``upper`` involves."""
    ring = upper.ring
    if k < 0:
        return ring.zero()
    out = ring.one()
    for i in range(k):
        out = out * (upper - i)
    return out.scale(Fraction(1, factorial(k)))


def rising(ring: Ring, start: Poly, step, count: int) -> Poly:
    """``start (start + step) ... (start + (count-1) step)``."""
    out = ring.one()
    for i in range(count):
        out = out * (start + step * i)
    return out


def cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Cycles ``(a1, ..., al)`` of a 0-based permutation with ``perm[a_i] = a_{i+1}``."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        a = start
        while not seen[a]:
            seen[a] = True
            cyc.append(a)
            a = perm[a]
        out.append(tuple(cyc))
    return out


def sign(perm: Sequence[int]) -> int:
    return -1 if (len(perm) - len(cycles(perm))) % 2 else 1


def perfect_matchings(points: Sequence[int]) -> list[list[tuple[int, int]]]:
    if not points:
        return [[]]
    first, rest = points[0], points[1:]
    out = []
    for i, partner in enumerate(rest):
        for m in perfect_matchings(rest[:i] + rest[i + 1:]):
            out.append([(first, partner)] + m)
    return out


def _rng(tag: str, seed: int) -> random.Random:
    return random.Random(f"{tag}:{seed}")


def _small_rational(rng: random.Random) -> Fraction:
    num = rng.choice([v for v in range(-9, 10) if v])
    den = rng.choice(range(1, 10))
    return Fraction(num, den)


def _random_matrix(rng: random.Random, rows: int, cols: int) -> Matrix:
    return Matrix.build(rows, cols, lambda i, j: _small_rational(rng))


def _random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        M = _random_matrix(rng, n, n)
        if det(M) != 0:
            return M


def _random_antisymmetric(rng: random.Random, n: int) -> Matrix:
    while True:
        upper = {(i, j): _small_rational(rng) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
        M = Matrix.build(n, n, lambda i, j: upper[i, j] if i < j else (-upper[j, i] if j < i else 0))
        if n == 0 or pf(M) != 0:
            return M


def _zero_point(p: Poly, variables) -> Poly:
    ring = p.ring
    return p.subst({v: ring.zero() for v in variables if v in p.variables()})


# --- permutations and matchings ------------------------------------------------


def check_cycle_genfn(k: int) -> bool:
    """Sum over S_k of s^(number of cycles) against the rising factorial."""
    ring = Ring([S])
    s = ring.var(S)
    lhs = ring.zero()
    for perm in permutations(range(k)):
        lhs = lhs + s ** len(cycles(perm))
    return lhs == rising(ring, s, 1, k)


def matching_cycle_count(matching, reference) -> int:
    """Cycles of the union of two perfect matchings on the same points."""
    partner_a = {}
    partner_b = {}
    for u, v in matching:
        partner_a[u], partner_a[v] = v, u
    for u, v in reference:
        partner_b[u], partner_b[v] = v, u
    seen = set()
    count = 0
    for start in partner_a:
        if start in seen:
            continue
        count += 1
        u = start
        while True:
            seen.add(u)
            w = partner_a[u]
            seen.add(w)
            u = partner_b[w]
            if u == start:
                break
    return count


def check_matching_cycle_sum(k: int) -> bool:
    """Sum over perfect matchings M of 2k points of s^(cycles of M with the reference matching)."""
    ring = Ring([S])
    s = ring.var(S)
    reference = [(2 * i, 2 * i + 1) for i in range(k)]
    lhs = ring.zero()
    for m in perfect_matchings(list(range(2 * k))):
        lhs = lhs + s ** matching_cycle_count(m, reference)
    return lhs == rising(ring, s, 2, k)


# --- derivatives of a determinant power ----------------------------------------


def check_lemma_elem(n: int, k: int, seed: int = 0) -> bool:
    """Directional derivatives of (det X)^s as a signed sum over permutations.

    The left side applies ``k`` random directional derivatives one at a time.
    The right side uses ``X^{-1} = adj(X) / det X``: a product of cycle traces
    with ``k`` inverses in total is ``(sum ...) / det(X)^k``.
    """
    rng = _rng("lemma_elem", seed)
    ring = Ring([S])
    X = Matrix.build(n, n, lambda i, j: ring.var(x(i, j)))
    P = det(X)
    directions = [_random_matrix(rng, n, n) for _ in range(k)]

    lhs = PowerElement.power(P)
    for E in directions:
        step = lhs.scale(0)
        for i in range(n):
            for j in range(n):
                if E[i, j]:
                    step = step + lhs.diff(x(i + 1, j + 1)).scale(E[i, j])
        lhs = step

    adj = adjugate(X)
    lifted = [E.map(ring.lift) for E in directions]
    s = ring.var(S)
    by_sign = ring.zero()
    by_minus_s = ring.zero()
    for perm in permutations(range(k)):
        weight = ring.one()
        cyc = cycles(perm)
        for c in cyc:
            M = None
            for a in c:
                step = adj @ lifted[a]
                M = step if M is None else M @ step
            trace = ring.zero()
            for i in range(n):
                trace = trace + M[i, i]
            weight = weight * trace
        by_sign = by_sign + weight * s ** len(cyc) * sign(perm)
        by_minus_s = by_minus_s + weight * (-s) ** len(cyc)
    by_minus_s = by_minus_s * (-1) ** k
    first = PowerElement(by_minus_s, P, -k)
    second = PowerElement(by_sign, P, -k)
    return lhs == first and lhs == second


# --- scalar-product integrals --------------------------------------------------


def _species_context(ring: Ring, count: int, n: int, name: str) -> tuple[GContext, list[list[int]], list[list[int]]]:
    """``count`` complex species of ``n`` pairs each, laid out pair by pair."""
    names = []
    plain, bar = [], []
    for a in range(count):
        plain.append([])
        bar.append([])
        for i in range(n):
            plain[a].append(len(names))
            names.append(f"{name}{a + 1}_{i + 1}")
            bar[a].append(len(names))
            names.append(f"{name}bar{a + 1}_{i + 1}")
    pairing = [(plain[a][i], bar[a][i]) for a in range(count) for i in range(n)]
    return GContext(ring, len(names), names, pairing), plain, bar


def _dot(ctx: GContext, left: Sequence[int], right: Sequence[int]) -> GElement:
    out = ctx.zero()
    for i, j in zip(left, right):
        out = out + ctx.gen(i) * ctx.gen(j)
    return out


def random_poly(ring: Ring, variables: Sequence[VarId], degree: int, rng: random.Random,
                density: float = 0.6) -> Poly:
    """Random polynomial with small rational coefficients and total degree <= ``degree``."""
    out = ring.zero()
    for exps in cartesian(range(degree + 1), repeat=len(variables)):
        if sum(exps) > degree or rng.random() > density:
            continue
        mono = ring.one()
        for v, e in zip(variables, exps):
            if e:
                mono = mono * ring.var(v) ** e
        out = out + mono.scale(_small_rational(rng))
    return out


def _as_operator(f: Poly) -> WeylOp:
    """Replace every variable of ``f`` by the derivative with respect to it."""
    ring = f.ring
    return WeylOp(ring, {m: ring.const(c) for m, c in f.terms.items()})


def check_intscalar(ell: int, n: int, seed: int = 0) -> bool:
    """Three expressions for a Berezin integral of a function of scalar products.

    ``int D(psi^1) ... D(psi^l) f(psibar^a . psi^b)``, ``det(d)^n f |_0`` and
    ``f(d) (det X)^n |_0`` must coincide.
    """
    rng = _rng("intscalar", seed)
    ring = Ring([S])
    xs = [x(a, b) for a in range(1, ell + 1) for b in range(1, ell + 1)]
    f = random_poly(ring, xs, n * ell, rng, density=0.4 if ell > 1 else 1.0)

    ctx, plain, bar = _species_context(ring, ell, n, "psi")
    bindings = {x(a + 1, b + 1): _dot(ctx, bar[a], plain[b]) for a in range(ell) for b in range(ell)}
    integral = subst_poly(f, bindings, ctx).integrate(complex_measure(ctx.pairing)).body()

    D = Matrix.build(ell, ell, lambda a, b: WeylOp.d(ring, x(a, b)))
    det_op = expand_det(D)
    g = f
    for _ in range(n):
        g = det_op.apply(g)
    via_det = _zero_point(g, xs)

    X = Matrix.build(ell, ell, lambda a, b: ring.var(x(a, b)))
    via_f = _zero_point(_as_operator(f).apply(det(X) ** n), xs)
    return integral == via_det and via_det == via_f


def check_gvform(n: int) -> bool:
    """Six-coupling Gaussian integral over two complex species equals (aa' + bb' + cc')^n."""
    ring = Ring([S])
    a1, a2 = ring.var(alpha(1)), ring.var(alpha(2))
    b1, b2 = ring.var(param("beta", 1)), ring.var(param("beta", 2))
    c1, c2 = ring.var(param("gamma", 1)), ring.var(param("gamma", 2))
    ctx, plain, bar = _species_context(ring, 2, n, "g")
    psi, psibar = plain[0], bar[0]
    lam, lambar = plain[1], bar[1]
    exponent = (_dot(ctx, lambar, lam) * a1 + _dot(ctx, psibar, psi) * a2
                + _dot(ctx, lambar, psi) * b1 + _dot(ctx, lam, psibar) * b2
                + _dot(ctx, lambar, psibar) * c1 + _dot(ctx, psi, lam) * c2)
    lhs = exponent.exp().integrate(complex_measure(ctx.pairing)).body()
    return lhs == (a1 * a2 + b1 * b2 + c1 * c2) ** n


def check_gvform_moments(n: int) -> bool:
    """Coefficient form: integrals of products of the six scalar-product powers."""
    ring = Ring([S])
    ctx, plain, bar = _species_context(ring, 2, n, "g")
    psi, psibar = plain[0], bar[0]
    lam, lambar = plain[1], bar[1]
    forms = [_dot(ctx, lambar, lam), _dot(ctx, psibar, psi), _dot(ctx, lambar, psi),
             _dot(ctx, lam, psibar), _dot(ctx, lambar, psibar), _dot(ctx, psi, lam)]
    powers = [[ctx.one()] for _ in forms]
    for k, form in enumerate(forms):
        for _ in range(n):
            powers[k].append(powers[k][-1] * form)
    measure = complex_measure(ctx.pairing)
    for exps in cartesian(range(n + 1), repeat=6):
        a, a2, b, b2, c, c2 = exps
        if sum(exps) != 2 * n:
            continue
        value = product((powers[k][e] for k, e in enumerate(exps)), ctx).integrate(measure).body()
        expected = 0
        if a == a2 and b == b2 and c == c2 and a + b + c == n:
            multinom = factorial(n) // (factorial(a) * factorial(b) * factorial(c))
            expected = multinom * (factorial(a) * factorial(b) * factorial(c)) ** 2
        if value != expected:
            return False
    return True


# --- Hessenberg operators ------------------------------------------------------


def hessenberg_vars(ell: int) -> list[VarId]:
    return [x(a, b) for a in range(1, ell + 1) for b in range(a, ell + 1)]


def hessenberg_operator(ring: Ring, ell: int, sub: Callable[[int], WeylOp]) -> WeylOp:
    """Determinant of the operator matrix with ``1 + d_aa`` on the diagonal,
    ``d_ab`` above it and ``sub(a)`` on the subdiagonal."""
    if ell == 0:
        return WeylOp.scalar(ring, 1)

    def entry(i, j):
        if i == j:
            return WeylOp.d(ring, x(i, i)) + 1
        if i < j:
            return WeylOp.d(ring, x(i, j))
        if i == j + 1:
            return sub(j)
        return WeylOp.zero(ring)

    return expand_det(Matrix.build(ell, ell, entry))


def hessenberg_poly(ring: Ring, ell: int) -> Poly:
    """Determinant with ``x_ab`` on and above the diagonal and 1 below it."""
    if ell == 0:
        return ring.one()

    def entry(i, j):
        if i <= j:
            return ring.var(x(i, j))
        return ring.one() if i == j + 1 else ring.zero()

    return det(Matrix.build(ell, ell, entry))


def _negative_power_series(op: WeylOp, target: Poly, depth: int, zero_vars) -> Poly:
    """``sum_{h <= depth} binom(-s, h) (op - 1)^h target``, evaluated at zero."""
    ring = target.ring
    shifted = op - 1
    minus_s = -ring.var(S)
    total = ring.zero()
    cur = target
    for h in range(depth + 1):
        if cur.is_zero():
            break
        total = total + binomial_poly(minus_s, h) * _zero_point(cur, zero_vars)
        cur = shifted.apply(cur)
    return total


def check_hessenberg(ell: int, k: int) -> bool:
    """Truncated series for ``D(a)^(-s) X^k`` at zero against the product formula."""
    ring = Ring([S])
    coeffs = [ring.var(param("a", i)) for i in range(1, ell)]
    op = hessenberg_operator(ring, ell, lambda j: WeylOp.scalar(ring, coeffs[j - 1]))
    lhs = _negative_power_series(op, hessenberg_poly(ring, ell) ** k, k * ell, hessenberg_vars(ell))

    minus_s = -ring.var(S)
    rhs = binomial_poly(minus_s, k) * factorial(k)
    for a in coeffs:
        factor = ring.zero()
        for b in range(k + 1):
            term = binomial_poly(minus_s - b, k - b) * a ** b
            factor = factor + term.scale(Fraction(factorial(k), factorial(b)))
        rhs = rhs * factor
    return lhs == rhs


def check_hessenberg_expand(ell: int) -> bool:
    """Last-column recursions for the Hessenberg operator and polynomial."""
    ring = Ring([S])
    coeffs = {i: ring.var(param("a", i)) for i in range(1, ell)}

    def sub(j):
        return WeylOp.scalar(ring, coeffs[j])

    ops = [hessenberg_operator(ring, m, sub) for m in range(ell + 1)]
    polys = [hessenberg_poly(ring, m) for m in range(ell + 1)]
    for m in range(1, ell + 1):
        rec_op = ops[m - 1]
        rec_poly = ring.zero()
        for a in range(1, m + 1):
            chain = ring.one()
            for b in range(a, m):
                chain = chain * coeffs[b]
            sgn = -1 if (m - a) % 2 else 1
            rec_op = rec_op + ops[a - 1].compose(WeylOp.d(ring, x(a, m))).left(chain * sgn)
            rec_poly = rec_poly + polys[a - 1] * ring.var(x(a, m)) * sgn
        if not (rec_op == ops[m] and rec_poly == polys[m]):
            return False
    return True


def check_solvingmulti(ell: int, k: int, exponents: Sequence | None = None) -> bool:
    """Hessenberg series with subdiagonal ``-d/dy_a`` acting on ``X^k prod (1 + y_a)^(m_a)``.

    ``exponents`` holds ``m_1 .. m_{l-1}`` as non-negative integers, or
    ``None`` for symbolic exponents.
    """
    ring = Ring([S])
    ys = [y(1, a) for a in range(1, ell)]
    if exponents is None:
        ms = [ring.var(param("m", a)) for a in range(1, ell)]
    else:
        if len(exponents) != ell - 1:
            raise ValueError("need one exponent per subdiagonal entry")
        ms = [ring.const(rat(m)) for m in exponents]
    op = hessenberg_operator(ring, ell, lambda j: -WeylOp.d(ring, ys[j - 1]))
    depth = k * ell
    target = hessenberg_poly(ring, ell) ** k
    for v, m in zip(ys, ms):
        # (1 + y)^m truncated past the highest derivative order reached
        series = ring.zero()
        for b in range(depth + 1):
            series = series + binomial_poly(m, b) * ring.var(v) ** b
        target = target * series
    lhs = _negative_power_series(op, target, depth, hessenberg_vars(ell) + ys)

    s = ring.var(S)
    rhs = ring.const((-1) ** (k * ell))
    for m in [ring.zero()] + ms:
        rhs = rhs * rising(ring, s + m, 1, k)
    return lhs == rhs


# --- triangular B matrices --------------------------------------------------------


def triangle_cells(ell: int) -> list[tuple[int, int]]:
    """Cells (i, j) with i + j <= l + 1, 1-based, row by row."""
    return [(i, j) for i in range(1, ell + 1) for j in range(1, ell + 2 - i)]


def _row_sum(B: dict, ell: int, i: int) -> int:
    return sum(B[i, j] for j in range(1, ell + 2 - i))


def _col_sum(B: dict, ell: int, j: int) -> int:
    return sum(B[i, j] for i in range(1, ell + 2 - j))


def bmatrix_row_column(B: dict, ell: int, k: int) -> bool:
    """First row sums to k; row i and column l+2-i have equal sums for i >= 2."""
    if _row_sum(B, ell, 1) != k:
        return False
    return all(_row_sum(B, ell, i) == _col_sum(B, ell, ell + 2 - i) for i in range(2, ell + 1))


def bmatrix_corners(B: dict, ell: int, k: int) -> bool:
    """Every upper-left block of h rows and l+1-h columns sums to k."""
    return all(sum(B[i, j] for i in range(1, h + 1) for j in range(1, ell + 2 - h)) == k
               for h in range(1, ell + 1))


def bmatrix_completion(B: dict, ell: int, k: int) -> dict | None:
    """Fill cells (i, l+2-i), i >= 2, so all row and column sums equal k; None if impossible."""
    full = dict(B)
    for i in range(2, ell + 1):
        fill = k - _row_sum(B, ell, i)
        if fill < 0:
            return None
        full[i, ell + 2 - i] = fill
    if _row_sum(B, ell, 1) != k:
        return None
    for j in range(1, ell + 1):
        if sum(v for (i, jj), v in full.items() if jj == j) != k:
            return None
    return full


def enumerate_bmatrices(ell: int, k: int):
    cells = triangle_cells(ell)
    for values in cartesian(range(k + 1), repeat=len(cells)):
        yield dict(zip(cells, values))


def multinomial(parts: Sequence[int]) -> int:
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def check_bmatrix_conditions(ell: int, k: int) -> bool:
    """The three characterizations of admissible B matrices agree on every candidate."""
    for B in enumerate_bmatrices(ell, k):
        a = bmatrix_row_column(B, ell, k)
        b = bmatrix_corners(B, ell, k)
        c = bmatrix_completion(B, ell, k) is not None
        if not a == b == c:
            return False
    return True


def check_bmatrix_sum(ell: int, k: int) -> bool:
    """For each row-sum vector, the multinomial sum over admissible B is a product of binomials."""
    if not check_bmatrix_conditions(ell, k):
        return False
    by_rows: dict[tuple[int, ...], int] = {}
    for B in enumerate_bmatrices(ell, k):
        if bmatrix_completion(B, ell, k) is None:
            continue
        rows = tuple(_row_sum(B, ell, i) for i in range(1, ell + 1))
        # membership as defined through row sums and the partial column sums
        if any(sum(B[h, ell + 2 - i] for h in range(1, i)) != rows[i - 1] for i in range(2, ell + 1)):
            return False
        weight = 1
        for i in range(1, ell + 1):
            weight *= multinomial([B[i, j] for j in range(1, ell + 2 - i)])
        by_rows[rows] = by_rows.get(rows, 0) + weight
    for rest in cartesian(range(k + 1), repeat=ell - 1):
        rows = (k,) + rest
        expected = 1
        for c in rows:
            expected *= comb(k, c)
        if by_rows.get(rows, 0) != expected:
            return False
    return True


# --- binomial sums with symbolic upper arguments ----------------------------------


def check_binom_parallel(m: int) -> bool:
    """sum_{j=0}^{m} binom(r+j, j) = binom(r+m+1, m) with r symbolic."""
    ring = Ring([S])
    r = ring.var(param("r"))
    lhs = ring.zero()
    for j in range(m + 1):
        lhs = lhs + binomial_poly(r + j, j)
    return lhs == binomial_poly(r + m + 1, m)


def check_chu_vandermonde(p: int) -> bool:
    """sum_j binom(w, j) binom(m, p-j) = binom(w+m, p) with w, m symbolic."""
    ring = Ring([S])
    w = ring.var(param("w"))
    m = ring.var(param("m"))
    lhs = ring.zero()
    for j in range(p + 1):
        lhs = lhs + binomial_poly(w, j) * binomial_poly(m, p - j)
    return lhs == binomial_poly(w + m, p)


def check_binom_triple(m: int) -> bool:
    """Alternating triple sums, both the exact-total and the bounded-total forms."""
    ring = Ring([S])
    a = ring.var(param("a"))
    b = ring.var(param("b"))
    exact = ring.zero()
    bounded = ring.zero()
    for k in range(m + 1):
        for h in range(m + 1 - k):
            for l in range(m + 1 - k - h):
                term = binomial_poly(a, h) * binomial_poly(b, k) * comb(h + l, h) * (-1) ** k
                bounded = bounded + term
                if k + h + l == m:
                    exact = exact + term
    return exact == binomial_poly(a - b + m, m) and bounded == binomial_poly(a - b + m + 1, m)


# --- insertions of linear forms into Berezin integrals ----------------------------


def _linear_forms(ctx: GContext, M: Matrix, gens: Sequence[int]) -> list[GElement]:
    out = []
    for i in range(M.rows):
        form = ctx.zero()
        for j, g in enumerate(gens):
            c = M[i, j]
            if c:
                form = form + ctx.gen(g).scale(c)
        out.append(form)
    return out


def _random_even_function(ctx: GContext, forms: Sequence[GElement], rng: random.Random) -> GElement:
    """exp of a random combination of the given even forms and their pairwise products."""
    arg = ctx.zero()
    for f in forms:
        arg = arg + f.scale(_small_rational(rng))
    for f, g in combinations(forms, 2):
        if rng.random() < 0.5:
            arg = arg + (f * g).scale(_small_rational(rng))
    return arg.exp()


def check_pbABp(n: int, I: Sequence[int], J: Sequence[int], species: int = 0, seed: int = 0) -> bool:
    """Complex-fermion insertion lemma with ``species`` extra sets of real generators."""
    if species % 2:
        raise ValueError("the number of extra species must be even")
    I, J = tuple(I), tuple(J)
    if len(I) != len(J):
        raise ValueError("minor index sets differ in size")
    rng = _rng(f"pbABp:{n}:{I}:{J}:{species}", seed)
    A = _random_matrix(rng, n, n)
    B = _random_matrix(rng, n, n)
    ring = Ring([S])
    names = [f"eta{i}" for i in range(1, n + 1)] + [f"etabar{i}" for i in range(1, n + 1)]
    for a in range(species):
        names += [f"theta{a + 1}_{i}" for i in range(1, n + 1)]
    ctx = GContext(ring, len(names), names)
    eta = list(range(n))
    etabar = list(range(n, 2 * n))
    thetas = [list(range(2 * n + a * n, 2 * n + (a + 1) * n)) for a in range(species)]
    measure = [g for i in range(n) for g in (eta[i], etabar[i])] + [g for th in thetas for g in th]

    scalars = [_dot(ctx, etabar, eta)]
    for th in thetas:
        scalars += [_dot(ctx, etabar, th), _dot(ctx, eta, th)]
    for th1, th2 in combinations(thetas, 2):
        scalars.append(_dot(ctx, th1, th2))
    f = _random_even_function(ctx, scalars, rng)

    A_bar = _linear_forms(ctx, A, etabar)
    B_eta = _linear_forms(ctx, B, eta)
    Ic, Jc = complement(I, n), complement(J, n)
    insertion = product((A_bar[i - 1] * B_eta[j - 1] for i, j in zip(Ic, Jc)), ctx)
    lhs = (insertion * f).integrate(measure).body()
    cofactor = det((A @ B.T).submatrix(Ic, Jc))
    for L in combinations(range(n), n - len(I)):
        reference = product((ctx.gen(etabar[i]) * ctx.gen(eta[i]) for i in L), ctx)
        rhs = (reference * f).integrate(measure).body() * cofactor
        if lhs != rhs:
            return False
    return True


def check_pbABp_corollary(n: int, I: Sequence[int], J: Sequence[int], seed: int = 0) -> bool:
    """Insertion against powers of a bilinear form: k! delta (det M) det[(A M^-T B^T) minor]."""
    I, J = tuple(I), tuple(J)
    k = len(I)
    rng = _rng(f"pbABp-cor:{n}:{I}:{J}", seed)
    A = _random_matrix(rng, n, n)
    B = _random_matrix(rng, n, n)
    M = _random_invertible(rng, n)
    ring = Ring([S])
    ctx = GContext.complex(ring, n, "eta")
    eta = [p[0] for p in ctx.pairing]
    etabar = [p[1] for p in ctx.pairing]
    form = ctx.zero()
    for i in range(n):
        for j in range(n):
            if M[i, j]:
                form = form + (ctx.gen(etabar[i]) * ctx.gen(eta[j])).scale(M[i, j])
    A_bar = _linear_forms(ctx, A, etabar)
    B_eta = _linear_forms(ctx, B, eta)
    Ic, Jc = complement(I, n), complement(J, n)
    insertion = product((A_bar[i - 1] * B_eta[j - 1] for i, j in zip(Ic, Jc)), ctx)
    closed = factorial(k) * det(M) * det((A @ inverse(M).T @ B.T).submatrix(Ic, Jc))
    power = ctx.one()
    for ell in range(n + 1):
        value = (insertion * power).integrate(complex_measure(ctx.pairing)).body()
        if value != (closed if ell == k else 0):
            return False
        power = power * form
    return True


def _symplectic_form(ctx: GContext, J: Matrix, left: Sequence[int], right: Sequence[int],
                     half: bool = False) -> GElement:
    out = ctx.zero()
    for a, i in enumerate(left):
        for b, j in enumerate(right):
            c = J[a, b]
            if c:
                out = out + (ctx.gen(i) * ctx.gen(j)).scale(Fraction(c, 2) if half else c)
    return out


def well_paired_sets(m: int, pairs: int) -> list[tuple[int, ...]]:
    """Unions of ``pairs`` of the blocks {2j-1, 2j} inside [2m], 0-based."""
    return [tuple(i for b in blocks for i in (2 * b, 2 * b + 1)) for blocks in combinations(range(m), pairs)]


def check_pbCJCp(m: int, I: Sequence[int], species: int = 0, seed: int = 0) -> bool:
    """Real-fermion insertion lemma with ``species`` extra sets of generators."""
    I = tuple(I)
    if len(I) % 2:
        raise ValueError("index set must have even size")
    n = 2 * m
    rng = _rng(f"pbCJCp:{m}:{I}:{species}", seed)
    C = _random_matrix(rng, n, n)
    Jmat = symplectic(n)
    ring = Ring([S])
    names = [f"theta{i}" for i in range(1, n + 1)]
    for a in range(species):
        names += [f"chi{a + 1}_{i}" for i in range(1, n + 1)]
    ctx = GContext(ring, len(names), names)
    theta = list(range(n))
    chis = [list(range(n + a * n, n + (a + 1) * n)) for a in range(species)]
    measure = real_measure(list(range(len(names))))

    forms = [_symplectic_form(ctx, Jmat, theta, theta, half=True)]
    for ch in chis:
        forms += [_symplectic_form(ctx, Jmat, theta, ch), _symplectic_form(ctx, Jmat, ch, ch, half=True)]
    for ch1, ch2 in combinations(chis, 2):
        forms.append(_symplectic_form(ctx, Jmat, ch1, ch2))
    f = _random_even_function(ctx, forms, rng)

    C_theta = _linear_forms(ctx, C, theta)
    Ic = complement(I, n)
    insertion = product((C_theta[i - 1] for i in Ic), ctx)
    lhs = (insertion * f).integrate(measure).body()
    cofactor = pf((C @ Jmat @ C.T).submatrix(Ic, Ic))
    for L in well_paired_sets(m, m - len(I) // 2):
        reference = product((ctx.gen(theta[i]) for i in L), ctx)
        rhs = (reference * f).integrate(measure).body() * cofactor
        if lhs != rhs:
            return False
    return True


def check_pbCJCp_corollary(m: int, I: Sequence[int], seed: int = 0) -> bool:
    """Insertion against powers of a quadratic form: k! delta (pf M) pf[(C M^-T C^T) minor]."""
    I = tuple(I)
    n = 2 * m
    k = len(I) // 2
    rng = _rng(f"pbCJCp-cor:{m}:{I}", seed)
    C = _random_matrix(rng, n, n)
    M = _random_antisymmetric(rng, n)
    ring = Ring([S])
    ctx = GContext.real(ring, n, "theta")
    theta = list(range(n))
    form = _symplectic_form(ctx, M, theta, theta, half=True)
    C_theta = _linear_forms(ctx, C, theta)
    Ic = complement(I, n)
    insertion = product((C_theta[i - 1] for i in Ic), ctx)
    closed = factorial(k) * pf(M) * pf((C @ inverse(M).T @ C.T).submatrix(Ic, Ic))
    power = ctx.one()
    for ell in range(m + 1):
        value = (insertion * power).integrate(real_measure(theta)).body()
        if value != (closed if ell == k else 0):
            return False
        power = power * form
    return True


LEMMAS: dict[str, Callable[..., bool]] = {
    "cycle_genfn": check_cycle_genfn,
    "matching_cycle_sum": check_matching_cycle_sum,
    "lemma_elem": check_lemma_elem,
    "intscalar": check_intscalar,
    "gvform": check_gvform,
    "gvform_moments": check_gvform_moments,
    "hessenberg": check_hessenberg,
    "hessenberg_expand": check_hessenberg_expand,
    "solvingmulti": check_solvingmulti,
    "bmatrix_conditions": check_bmatrix_conditions,
    "bmatrix_sum": check_bmatrix_sum,
    "binom_parallel": check_binom_parallel,
    "chu_vandermonde": check_chu_vandermonde,
    "binom_triple": check_binom_triple,
    "sub_lemma_pbABp": check_pbABp,
    "sub_lemma_pbABp_corollary": check_pbABp_corollary,
    "sub_lemma_pbCJCp": check_pbCJCp,
    "sub_lemma_pbCJCp_corollary": check_pbCJCp_corollary,
}


def _all_minors(n: int) -> list[tuple[tuple, tuple]]:
    return [(I, J) for k in range(n + 1) for I in combinations(range(1, n + 1), k)
            for J in combinations(range(1, n + 1), k)]


def _even_subsets(n: int) -> list[tuple]:
    return [I for k in range(0, n + 1, 2) for I in combinations(range(1, n + 1), k)]


def default_grid(max_size: int = 3, seed: int = 0) -> list[tuple[str, dict]]:
    """Every lemma instance run by the desk suite; ``max_size`` caps the sizes (0 = none)."""
    c = max_size
    grid: list[tuple[str, dict]] = []
    if c <= 0:
        return grid
    grid += [("cycle_genfn", {"k": k}) for k in range(0, 2 * c + 1)]
    grid += [("matching_cycle_sum", {"k": k}) for k in range(0, c + 2)]
    grid += [("lemma_elem", {"n": n, "k": k, "seed": seed}) for n in range(1, min(c, 3) + 1)
             for k in range(0, min(c, 3) + 1)]
    grid += [("intscalar", {"ell": ell, "n": n, "seed": seed}) for ell in range(1, min(c, 2) + 1)
             for n in range(1, min(c, 2) + 1)]
    grid += [("gvform", {"n": n}) for n in range(1, c + 1)]
    grid += [("gvform_moments", {"n": n}) for n in range(1, min(c, 2) + 1)]
    grid += [("hessenberg", {"ell": ell, "k": k}) for ell in range(1, c + 1) for k in range(0, c + 1)]
    grid += [("hessenberg_expand", {"ell": ell}) for ell in range(1, c + 2)]
    grid += [("solvingmulti", {"ell": ell, "k": k, "exponents": None})
             for ell in range(1, min(c, 3) + 1) for k in range(0, min(c, 2) + 1)]
    grid += [("solvingmulti", {"ell": ell, "k": k, "exponents": ms})
             for ell in range(1, min(c, 3) + 1) for k in range(1, min(c, 2) + 1)
             for ms in cartesian(range(3), repeat=ell - 1)]
    grid += [("bmatrix_conditions", {"ell": ell, "k": k}) for ell in range(1, c + 1) for k in range(0, c + 1)]
    grid += [("bmatrix_sum", {"ell": ell, "k": k}) for ell in range(1, c + 1) for k in range(0, c + 1)]
    grid += [("binom_parallel", {"m": m}) for m in range(0, 2 * c + 1)]
    grid += [("chu_vandermonde", {"p": p}) for p in range(0, 2 * c + 1)]
    grid += [("binom_triple", {"m": m}) for m in range(0, 2 * c + 1)]
    for n in range(1, min(c, 3) + 1):
        for I, J in _all_minors(n):
            grid.append(("sub_lemma_pbABp", {"n": n, "I": I, "J": J, "species": 0, "seed": seed}))
            grid.append(("sub_lemma_pbABp_corollary", {"n": n, "I": I, "J": J, "seed": seed}))
    for n in range(1, min(c, 2) + 1):
        for I, J in _all_minors(n):
            grid.append(("sub_lemma_pbABp", {"n": n, "I": I, "J": J, "species": 2, "seed": seed}))
    for m in range(1, min(c, 3) + 1):
        for I in _even_subsets(2 * m):
            grid.append(("sub_lemma_pbCJCp", {"m": m, "I": I, "species": 0, "seed": seed}))
            grid.append(("sub_lemma_pbCJCp_corollary", {"m": m, "I": I, "seed": seed}))
    for m in range(1, min(c, 2) + 1):
        for I in _even_subsets(2 * m):
            grid.append(("sub_lemma_pbCJCp", {"m": m, "I": I, "species": 1, "seed": seed}))
    return grid
