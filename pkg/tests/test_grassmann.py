import random
from fractions import Fraction
from itertools import combinations
from math import factorial

import pytest
from hypothesis import given, strategies as st

from cayleyid.grassmann import (GContext, GElement, bilinear, complex_measure, gaussian_complex,
                                gaussian_real, linear_change, product, quadratic_real,
                                real_measure, subst_poly)
from cayleyid.matrixfun import Matrix, complement, det, eps, eps_pair, inverse, pf, symplectic
from cayleyid.ring import S, Ring, param, x

from oracles import (lift, pf_by_permutations, random_rational, symbolic_antisymmetric,
                     symbolic_matrix)


def random_element(ctx, rng, gens=None, parity=None, terms=4):
    """Random element supported on ``gens`` with small rational coefficients."""
    gens = list(range(ctx.n)) if gens is None else list(gens)
    out = ctx.zero()
    for _ in range(terms):
        k = rng.randint(0, len(gens))
        if parity is not None and k % 2 != parity:
            k = k - 1 if k else 1
            if k > len(gens):
                continue
        chosen = rng.sample(gens, k)
        mono = product((ctx.gen(i) for i in sorted(chosen)), ctx)
        out = out + mono.scale(random_rational(rng) or 1)
    return out


def odd_linear(ctx, rng, gens):
    out = ctx.zero()
    for i in gens:
        c = random_rational(rng)
        if c:
            out = out + ctx.gen(i).scale(c)
    return out


def translate(f, shifts):
    """f(chi + xi): replace each generator chi_k by chi_k + shifts[k]."""
    ctx = f.ctx
    images = [ctx.gen(k) + shifts[k] for k in range(ctx.n)]
    out = ctx.zero()
    for mask, c in f.coeffs.items():
        term = ctx.one()
        for k in range(ctx.n):
            if mask >> k & 1:
                term = term * images[k]
        out = out + term.scale(c)
    return out


# --- multiplication ---------------------------------------------------------------


def test_product_examples():
    ctx = GContext.real(Ring(), 3)
    c1, c2 = ctx.gen(0), ctx.gen(1)
    assert c1 * c2 == GElement(ctx, {0b11: ctx.ring.one()})
    assert c2 * c1 == -(c1 * c2)
    assert (c1 * c1).is_zero()
    u = ctx.one() + c1 * c2
    assert u * u == ctx.one() + (c1 * c2).scale(2)


def test_context_checks():
    ring = Ring()
    with pytest.raises(ValueError):
        GContext(ring, 63)
    with pytest.raises(ValueError):
        GContext(ring, 2, ["a", "b"], [(0, 0)])
    a, b = GContext.real(ring, 2), GContext.real(ring, 2)
    with pytest.raises(ValueError):
        a.gen(0) * b.gen(0)


# --- derivatives and integrals --------------------------------------------------------


def test_derivative_sign():
    ctx = GContext.real(Ring(), 2)
    assert (ctx.gen(1) * ctx.gen(0)).deriv(0) == -ctx.gen(1)


def test_full_integral_extracts_top_coefficient():
    ctx = GContext.real(Ring(), 2)
    f = ctx.gen(0) * ctx.gen(1)
    assert f.integrate(real_measure([0, 1])) == ctx.one()
    assert f.top() == 1


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_powers_of_scalar_product(n):
    ring = Ring()
    ctx = GContext.complex(ring, n, "eta")
    form = bilinear(Matrix.identity(n), ctx, [p[1] for p in ctx.pairing], [p[0] for p in ctx.pairing])
    for ell in range(0, n + 2):
        got = (form ** ell).integrate(complex_measure(ctx.pairing)).body()
        assert got == (factorial(n) if ell == n else 0)


def test_repeated_index_integrates_to_zero():
    ctx = GContext.real(Ring(), 2)
    assert (ctx.gen(0) * ctx.gen(1)).integrate([0, 0]).is_zero()
    with pytest.raises(IndexError):
        ctx.one().integrate([5])


# --- exponentials and series ------------------------------------------------------------


def test_exp_examples():
    ring = Ring()
    ctx = GContext.complex(ring, 1, "eta")
    eta, bar = ctx.gen(0), ctx.gen(1)
    assert (bar * eta).exp() == ctx.one() + bar * eta
    ctx2 = GContext.complex(ring, 2)
    assert gaussian_complex(Matrix.identity(2), ring, ctx2) == 1


def test_exp_requires_even_pure_soul():
    ctx = GContext.real(Ring(), 2)
    with pytest.raises(ValueError):
        ctx.gen(0).exp()
    with pytest.raises(ValueError):
        (ctx.one() + ctx.gen(0) * ctx.gen(1)).exp()


def test_exp_of_sum_is_product():
    rng = random.Random(3)
    ctx = GContext.real(Ring(), 6)
    for _ in range(20):
        f = random_element(ctx, rng, parity=0).soul().even_part()
        g = random_element(ctx, rng, parity=0).soul().even_part()
        assert (f + g).exp() == f.exp() * g.exp()


def _negative_binomial_coeffs(ring, count):
    # coefficients of (1 - u)^(-s): s(s+1)...(s+k-1)/k!
    s = ring.var(S)
    out, c = [], ring.one()
    for k in range(count):
        out.append(c)
        c = c * (s + k) * Fraction(1, k + 1)
    return out


def test_series_examples():
    ring = Ring([S])
    ctx = GContext.complex(ring, 1, "eta")
    form = ctx.gen(1) * ctx.gen(0)
    got = form.series(_negative_binomial_coeffs(ring, 4))
    assert got == ctx.one() + form.scale(ring.var(S))
    assert got.integrate(complex_measure(ctx.pairing)).body() == ring.var(S)
    assert form.series([1]) == ctx.one()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_negative_power_integral_gives_rising_factorial(n):
    ring = Ring([S])
    ctx = GContext.complex(ring, n, "eta")
    form = bilinear(Matrix.identity(n), ctx, [p[1] for p in ctx.pairing], [p[0] for p in ctx.pairing])
    got = form.series(_negative_binomial_coeffs(ring, n + 2)).integrate(complex_measure(ctx.pairing))
    s = ring.var(S)
    expected = ring.one()
    for j in range(n):
        expected = expected * (s + j)
    assert got.body() == expected


# --- substitution --------------------------------------------------------------------------


def test_subst_nilpotent_square():
    ring = Ring()
    z = ring.var(x(1, 1))
    ctx = GContext.real(ring, 2)
    nil = ctx.gen(0) * ctx.gen(1)
    got = subst_poly(z * z, {x(1, 1): ctx.scalar(z) + nil}, ctx)
    assert got == ctx.scalar(z * z) + nil.scale(z * 2)


def test_subst_rejects_odd_binding():
    ring = Ring()
    ctx = GContext.real(ring, 2)
    with pytest.raises(ValueError):
        subst_poly(ring.var(x(1, 1)), {x(1, 1): ctx.gen(0)}, ctx)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_subst_into_determinant_matches_determinant_of_shifted_matrix(n):
    ring = Ring()
    X = Matrix.build(n, n, lambda i, j: ring.var(x(i, j)))
    ctx = GContext.complex(ring, n, "eta")
    eta = [p[0] for p in ctx.pairing]
    bar = [p[1] for p in ctx.pairing]
    shifted = Matrix.build(n, n, lambda i, j: ctx.scalar(X[i - 1, j - 1]) + ctx.gen(bar[i - 1]) * ctx.gen(eta[j - 1]))
    bindings = {x(i, j): shifted[i - 1, j - 1] for i in range(1, n + 1) for j in range(1, n + 1)}
    assert subst_poly(det(X), bindings, ctx) == det(shifted)


def test_dilation_translation_with_square_zero_dilation():
    # exp((a + b z) d/dz) z^2 with b = chi1 chi2 equals z^2 evaluated at (1+b) z + (1 + b/2) a
    ring = Ring()
    zv, av = x(1, 1), param("a", 1)
    z, a = ring.var(zv), ring.var(av)
    ctx = GContext.real(ring, 2)
    b = ctx.gen(0) * ctx.gen(1)
    for P in (z * z, z ** 3 + z.scale(2) + 1, z ** 4):
        def step(F):
            dz = GElement(ctx, {m: c.diff(zv) for m, c in F.coeffs.items() if not c.diff(zv).is_zero()})
            return dz.scale(a) + b * dz.scale(z)
        total, term, k = ctx.zero(), ctx.scalar(P), 0
        while not term.is_zero():
            total = total + term.scale(Fraction(1, factorial(k)))
            term = step(term)
            k += 1
        image = ctx.scalar(z) + b.scale(z) + ctx.scalar(a) + b.scale(a * Fraction(1, 2))
        assert subst_poly(P, {zv: image}, ctx) == total


# --- linear changes of variables -------------------------------------------------------------


def test_linear_change_examples():
    ring = Ring()
    rng = random.Random(0)
    ctx = GContext.real(ring, 3)
    f = random_element(ctx, rng)
    assert linear_change(f, Matrix.identity(3)) == f
    c = Fraction(3, 2)
    top = ctx.gen(0) * ctx.gen(1) * ctx.gen(2)
    diag = Matrix.build(3, 3, lambda i, j: c if i == j else 0)
    assert linear_change(top, diag).top() == c ** 3
    ctx2 = GContext.real(ring, 2)
    A = symbolic_matrix(ring, 2, 2)
    assert linear_change(ctx2.gen(0) * ctx2.gen(1), A).top() == det(A)
    with pytest.raises(ValueError):
        linear_change(f, Matrix.identity(2))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_linear_change_scales_integral_by_det(n):
    ring = Ring()
    rng = random.Random(n)
    ctx = GContext.real(ring, n)
    A = symbolic_matrix(ring, n, n) if n <= 3 else lift(ring, Matrix.build(n, n, lambda i, j: random_rational(rng)))
    for _ in range(5):
        f = random_element(ctx, rng, terms=6)
        assert linear_change(f, A).top() == det(A) * f.top()


# --- Gaussian integrals ------------------------------------------------------------------------


def test_gaussian_real_examples():
    ring = Ring()
    A2 = symbolic_antisymmetric(ring, 2)
    assert gaussian_real(A2, ring) == ring.var(param("a", 1, 2))
    A4 = symbolic_antisymmetric(ring, 4)
    a = lambda i, j: ring.var(param("a", i, j))
    assert gaussian_real(A4, ring) == a(1, 2) * a(3, 4) - a(1, 3) * a(2, 4) + a(1, 4) * a(2, 3)
    assert gaussian_real(symbolic_antisymmetric(ring, 3), ring).is_zero()
    with pytest.raises(ValueError):
        gaussian_real(Matrix([[0, 1], [1, 0]]), ring)


@pytest.mark.parametrize("n", range(1, 7))
def test_gaussian_real_both_conventions(n):
    ring = Ring()
    A = symbolic_antisymmetric(ring, n)
    ctx = GContext.real(ring, n)
    q = quadratic_real(A, ctx)
    forward = q.exp().integrate(list(range(n - 1, -1, -1))).body()
    backward = (-q).exp().integrate(list(range(n))).body()
    expected = pf_by_permutations(A) if n % 2 == 0 else ring.zero()
    assert forward == expected
    assert backward == expected
    assert gaussian_real(A, ring) == expected


def test_gaussian_complex_examples():
    ring = Ring()
    A1 = symbolic_matrix(ring, 1, 1)
    assert gaussian_complex(A1, ring) == ring.var(param("a", 1, 1))
    for m in (1, 2, 3):
        assert gaussian_complex(Matrix.identity(m), ring) == 1
        assert gaussian_complex(symbolic_matrix(ring, m, m), ring) == det(symbolic_matrix(ring, m, m))
    with pytest.raises(ValueError):
        gaussian_complex(Matrix.identity(2), ring, GContext.real(ring, 4))


# --- algebraic laws --------------------------------------------------------------------------------


def _homogeneous(ctx, rng, parity):
    f = random_element(ctx, rng, terms=5)
    return f.even_part() if parity == 0 else f.odd_part()


@given(st.integers(1, 5), st.integers(0, 1), st.integers(0, 1), st.integers(0, 10 ** 6))
def test_graded_commutation(n, pf_, pg, seed):
    rng = random.Random(seed)
    ctx = GContext.real(Ring(), n)
    f, g = _homogeneous(ctx, rng, pf_), _homogeneous(ctx, rng, pg)
    sign = -1 if pf_ and pg else 1
    assert f * g == (g * f).scale(sign)
    if pf_:
        assert (f * f).is_zero()


def test_derivation_laws_randomized():
    count = 0
    for seed in range(150):
        rng = random.Random(seed)
        n = rng.randint(1, 5)
        ctx = GContext.real(Ring(), n)
        f = random_element(ctx, rng, terms=6)
        g = random_element(ctx, rng, terms=6)
        i, j = rng.randrange(n), rng.randrange(n)
        assert f.deriv(i).deriv(i).is_zero()
        assert (f.deriv(i).deriv(j) + f.deriv(j).deriv(i)).is_zero()
        assert (f * g).deriv(i) == f.deriv(i) * g + f.parity_flip() * g.deriv(i)
        count += 1
    assert count >= 100


@pytest.mark.parametrize("n", range(1, 6))
def test_fubini_sign(n):
    rng = random.Random(100 + n)
    ring = Ring()
    ctx = GContext.real(ring, n)
    for p in range(0, n + 1):
        for I in combinations(range(n), p):
            Ic = [j for j in range(n) if j not in I]
            f = random_element(ctx, rng, gens=I, terms=5)
            g = random_element(ctx, rng, gens=Ic, terms=5)
            measure = list(reversed(I)) + list(reversed(Ic))
            lhs = (f * g).integrate(measure)
            rhs = f.integrate(list(reversed(I))) * g.integrate(list(reversed(Ic)))
            assert lhs == rhs.scale((-1) ** (p * (n - p)))


@pytest.mark.parametrize("n", range(1, 5))
def test_translation_invariance(n):
    rng = random.Random(200 + n)
    ctx = GContext.real(Ring(), n)
    for p in range(1, n + 1):
        for I in combinations(range(n), p):
            Ic = [j for j in range(n) if j not in I]
            f = random_element(ctx, rng, terms=6)
            shifts = [ctx.zero()] * n
            if Ic:
                for j in I:
                    shifts[j] = odd_linear(ctx, rng, Ic)
            measure = list(reversed(I))
            assert translate(f, shifts).integrate(measure) == f.integrate(measure)


# --- Wick theorems ----------------------------------------------------------------------------------


def _unit_upper(ring, n, name):
    return Matrix.build(n, n, lambda i, j: ring.one() if i == j else (ring.var(param(name, i, j)) if i < j else ring.zero()))


def _unipotent_inverse(U):
    # (I + N)^{-1} = sum_k (-N)^k for strictly upper triangular N
    n = U.rows
    one = U[0, 0]
    zero = one * 0
    I = Matrix.identity(n, one, zero)
    N = U - I
    out, power = I, I
    for _ in range(n):
        power = power @ (-N)
        out = out + power
    return out


def _wick_real_sources(ring, A, Ainv):
    n = A.rows
    names = [f"chi{i + 1}" for i in range(n)] + [f"theta{i + 1}" for i in range(n)]
    ctx = GContext(ring, 2 * n, names)
    chi, lam = list(range(n)), list(range(n, 2 * n))
    source = ctx.zero()
    for i in range(n):
        source = source + ctx.gen(lam[i]) * ctx.gen(chi[i])
    lhs = (quadratic_real(A, ctx, chi) + source).exp().integrate(real_measure(chi))
    rhs = quadratic_real(Ainv, ctx, lam).exp().scale(pf(A))
    return lhs, rhs


@pytest.mark.parametrize("m", [1, 2])
def test_wick_real_with_sources(m):
    ring = Ring()
    n = 2 * m
    J = lift(ring, symplectic(n))
    lhs, rhs = _wick_real_sources(ring, J, lift(ring, inverse(symplectic(n))))
    assert lhs == rhs
    # A = X J X^T with X unit upper triangular: pf A = 1 and A^{-1} stays polynomial
    X = _unit_upper(ring, n, "u")
    Xinv = _unipotent_inverse(X)
    A = X @ J @ X.T
    Jinv = lift(ring, inverse(symplectic(n)))
    Ainv = Xinv.T @ Jinv @ Xinv
    assert A @ Ainv == Matrix.identity(n, ring.one(), ring.zero())
    lhs, rhs = _wick_real_sources(ring, A, Ainv)
    assert lhs == rhs
    rng = random.Random(m)
    for _ in range(3):
        R = Matrix.build(n, n, lambda i, j: random_rational(rng))
        B = R - R.T
        if pf(B) == 0:
            continue
        lhs, rhs = _wick_real_sources(ring, lift(ring, B), lift(ring, inverse(B)))
        assert lhs == rhs


def _wick_complex_sources(ring, A, Ainv):
    n = A.rows
    names = []
    for i in range(n):
        names += [f"psi{i + 1}", f"psibar{i + 1}"]
    for i in range(n):
        names += [f"lam{i + 1}", f"lambar{i + 1}"]
    pairs = [(2 * i, 2 * i + 1) for i in range(2 * n)]
    ctx = GContext(ring, 4 * n, names, pairs)
    psi = [2 * i for i in range(n)]
    bar = [2 * i + 1 for i in range(n)]
    lam = [2 * n + 2 * i for i in range(n)]
    lambar = [2 * n + 2 * i + 1 for i in range(n)]
    form = bilinear(A, ctx, bar, psi)
    for i in range(n):
        form = form + ctx.gen(lambar[i]) * ctx.gen(psi[i]) + ctx.gen(bar[i]) * ctx.gen(lam[i])
    lhs = form.exp().integrate(complex_measure(pairs[:n]))
    rhs = bilinear(Ainv, ctx, lambar, lam).scale(-1).exp().scale(det(A))
    return lhs, rhs


@pytest.mark.parametrize("n", [1, 2, 3])
def test_wick_complex_with_sources(n):
    ring = Ring()
    U = _unit_upper(ring, n, "u")
    lhs, rhs = _wick_complex_sources(ring, U, _unipotent_inverse(U))
    assert lhs == rhs
    rng = random.Random(n)
    R = Matrix.build(n, n, lambda i, j: random_rational(rng) + (3 if i == j else 0))
    if det(R) != 0:
        lhs, rhs = _wick_complex_sources(ring, lift(ring, R), lift(ring, inverse(R)))
        assert lhs == rhs


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wick_complex_correlations(n):
    ring = Ring()
    A = symbolic_matrix(ring, n, n)
    ctx = GContext.complex(ring, n)
    psi = [p[0] for p in ctx.pairing]
    bar = [p[1] for p in ctx.pairing]
    weight = bilinear(A, ctx, bar, psi).exp()
    measure = complex_measure(ctx.pairing)
    for k in range(n + 1):
        for I in combinations(range(1, n + 1), k):
            for J in combinations(range(1, n + 1), k):
                ins = product((ctx.gen(bar[i - 1]) * ctx.gen(psi[j - 1]) for i, j in zip(I, J)), ctx)
                got = (ins * weight).integrate(measure).body()
                minor = det(A.submatrix(complement(I, n), complement(J, n)))
                assert got == minor * eps_pair(I, J)


@pytest.mark.parametrize("n", [2, 4])
def test_wick_real_correlations(n):
    ring = Ring()
    A = symbolic_antisymmetric(ring, n)
    ctx = GContext.real(ring, n)
    weight = quadratic_real(A, ctx).exp()
    measure = real_measure(list(range(n)))
    for k in range(n + 1):
        for I in combinations(range(1, n + 1), k):
            ins = product((ctx.gen(i - 1) for i in I), ctx)
            got = (ins * weight).integrate(measure).body()
            if k % 2:
                assert got.is_zero()
            else:
                Ic = complement(I, n)
                assert got == pf(A.submatrix(Ic, Ic)) * eps(I)


# --- matrix determinant lemmas with Grassmann entries -------------------------------------------------


def _odd_matrix(ctx, rows, cols, start):
    return Matrix.build(rows, cols, lambda i, j: ctx.gen(start + (i - 1) * cols + (j - 1)))


def _eye(ctx, n):
    return Matrix.identity(n, ctx.one(), ctx.zero())


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_fermionic_matrix_determinant_lemma(m, n):
    ring = Ring()
    ctx = GContext.real(ring, 2 * m * n)
    U = _odd_matrix(ctx, m, n, 0)
    V = _odd_matrix(ctx, m, n, m * n)
    lhs = det(_eye(ctx, m) + U @ V.T)
    inner = det(_eye(ctx, n) + V.T @ U)
    assert lhs.body() == 1 and inner.body() == 1
    assert lhs * inner == ctx.one()


def _lowrank_matrix(u, v, one, zero):
    m = len(u[0])
    return Matrix.build(m, m, lambda i, j: (one if i == j else zero) + _sum(
        u[a][i - 1] * v[a][j - 1] for a in range(len(u))))


def _sum(items):
    items = list(items)
    out = items[0]
    for e in items[1:]:
        out = out + e
    return out


@pytest.mark.parametrize("m,n", [(m, n) for m in (1, 2, 3) for n in (1, 2)])
def test_low_rank_perturbation_commuting(m, n):
    ring = Ring()
    u = [[ring.var(param("u", a, i)) for i in range(1, m + 1)] for a in range(1, n + 1)]
    v = [[ring.var(param("v", a, i)) for i in range(1, m + 1)] for a in range(1, n + 1)]
    M = Matrix.build(n, n, lambda a, b: _sum(v[a - 1][i] * u[b - 1][i] for i in range(m)))
    lhs = det(_lowrank_matrix(u, v, ring.one(), ring.zero()))
    assert lhs == det(Matrix.identity(n, ring.one(), ring.zero()) + M)


@pytest.mark.parametrize("m,n", [(m, n) for m in (1, 2, 3) for n in (1, 2)])
def test_low_rank_perturbation_anticommuting(m, n):
    ring = Ring()
    ctx = GContext.real(ring, 2 * m * n)
    u = [[ctx.gen(a * m + i) for i in range(m)] for a in range(n)]
    v = [[ctx.gen(m * n + a * m + i) for i in range(m)] for a in range(n)]
    M = Matrix.build(n, n, lambda a, b: _sum(v[a - 1][i] * u[b - 1][i] for i in range(m)))
    lhs = det(_lowrank_matrix(u, v, ctx.one(), ctx.zero()))
    rhs = det(_eye(ctx, n) + M)
    assert lhs * rhs == ctx.one()


@pytest.mark.parametrize("m", [1, 2, 3])
def test_low_rank_symmetric_corollary(m):
    ring = Ring()
    rng = random.Random(m)
    while True:
        R = Matrix.build(m, m, lambda i, j: random_rational(rng))
        A = R + R.T
        if det(A) != 0:
            break
    Ainv = inverse(A)
    ctx = GContext.complex(ring, m, "eta")
    eta = [ctx.gen(p[0]) for p in ctx.pairing]
    bar = [ctx.gen(p[1]) for p in ctx.pairing]
    Aeta = [_sum(eta[k].scale(Ainv[i, k]) for k in range(m)) for i in range(m)]
    barA = [_sum(bar[k].scale(A[k, j]) for k in range(m)) for j in range(m)]
    Mat = Matrix.build(m, m, lambda i, j: (ctx.one() if i == j else ctx.zero())
                       + bar[i - 1] * eta[j - 1] - Aeta[i - 1] * barA[j - 1])
    scalar = _sum(bar[i] * eta[i] for i in range(m))
    base = ctx.one() - scalar
    assert det(Mat) * base * base == ctx.one()


def _rect_product(vecs_x, vecs_y, sizes, one, zero):
    ell = len(sizes)
    prod = None
    for a in range(ell):
        rows, cols = sizes[a], sizes[(a + 1) % ell]
        F = Matrix.build(rows, cols, lambda i, j: (one if i == j else zero) - vecs_x[a][i - 1] * vecs_y[a][j - 1])
        prod = F if prod is None else prod @ F
    return prod


def _rect_N(vecs_x, vecs_y, sizes, one, zero):
    ell = len(sizes)
    n1 = sizes[0]
    ext = list(sizes) + [sizes[0]]

    def nmin(a, b):  # 1-based, inclusive
        return min(ext[g - 1] for g in range(a, b + 1))

    def entry(a, b):
        ya, xb = vecs_y[a - 1], vecs_x[b - 1]
        if a < b:
            top = nmin(a + 1, b)
            terms = [ya[i] * xb[i] for i in range(n1, top)]
            return _sum(terms) if terms else zero
        base = one if a == b else zero
        return base - _sum(ya[i] * xb[i] for i in range(n1))

    return Matrix.build(ell, ell, entry)


RECT_SIZES = [(1,), (2,), (3,), (1, 1), (1, 2), (2, 2), (2, 3), (1, 3), (1, 2, 3), (2, 2, 2), (1, 3, 2)]


@pytest.mark.parametrize("sizes", RECT_SIZES)
def test_low_rank_rectangular_corollary_commuting(sizes):
    ring = Ring()
    ell = len(sizes)
    ext = list(sizes) + [sizes[0]]
    xs = [[ring.var(param(f"p{a}", i)) for i in range(1, ext[a] + 1)] for a in range(ell)]
    ys = [[ring.var(param(f"q{a}", i)) for i in range(1, ext[a + 1] + 1)] for a in range(ell)]
    lhs = det(_rect_product(xs, ys, sizes, ring.one(), ring.zero()))
    assert lhs == det(_rect_N(xs, ys, sizes, ring.one(), ring.zero()))


@pytest.mark.parametrize("sizes", [(1,), (2,), (1, 1), (1, 2), (2, 2), (1, 1, 1), (1, 2, 2)])
def test_low_rank_rectangular_corollary_anticommuting(sizes):
    ring = Ring()
    ell = len(sizes)
    ext = list(sizes) + [sizes[0]]
    total = sum(ext[a] + ext[a + 1] for a in range(ell))
    ctx = GContext.real(ring, total)
    k = 0
    xs, ys = [], []
    for a in range(ell):
        xs.append([ctx.gen(k + i) for i in range(ext[a])])
        k += ext[a]
        ys.append([ctx.gen(k + i) for i in range(ext[a + 1])])
        k += ext[a + 1]
    lhs = det(_rect_product(xs, ys, sizes, ctx.one(), ctx.zero()))
    rhs = det(_rect_N(xs, ys, sizes, ctx.one(), ctx.zero()))
    assert lhs * rhs == ctx.one()
