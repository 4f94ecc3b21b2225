"""Kahler differentials of monogenic rings as finitely presented modules.

For A = Z[x]/(f) the module of differentials is A*dx / (f'(x) dx); adding a
coefficient modulus p^M appends the relations p^M * x^j dx.  Everything is
presented over the integers (generators x^j dx), so equality and torsion
questions reduce to Smith normal form, and A-scalar multiplication is
polynomial multiplication mod f on representatives.

Also here: the twisted differential fn_d (the level-lowering F^n d on Witt
vectors), the explicit p-torsion generator alpha with its defining identity
(zeta_p - 1) alpha = dlog zeta_p, the division-by-p witness search, and the
log-differential sub-presentation check dlog m = x dy - u^{-1} du.
"""

from math import gcd, prod

from .modlin import solve_mod_pp
from .rings import IntegerRing, RingElement
from .snf import smith_normal_form, smith_with_inverse  # noqa: F401 (re-export)
from .witt import WittVector


class PresentedModule:
    """Z^g modulo the row span of an integer relation matrix."""

    def __init__(self, gens, relations, base=None):
        self.base = base if base is not None else IntegerRing()
        self.gens = gens
        self.relations = [list(map(int, row)) for row in relations]
        for row in self.relations:
            if len(row) != gens:
                raise ValueError("relation width mismatch")
        self._snf = None

    def _snf_data(self):
        if self._snf is None:
            rel = self.relations if self.relations else [[0] * self.gens]
            u, d, v, vinv = smith_with_inverse(rel)
            diag = [
                d[i][i] if i < len(d) else 0 for i in range(self.gens)
            ]
            self._snf = (diag, v, vinv)
        return self._snf

    def normal_form(self, vec):
        diag, v, _ = self._snf_data()
        y = [sum(vec[i] * v[i][j] for i in range(self.gens)) for j in range(self.gens)]
        return tuple(y[j] % diag[j] if diag[j] else y[j] for j in range(self.gens))

    def is_zero(self, vec):
        return all(c == 0 for c in self.normal_form(vec))

    def eq(self, a, b):
        return self.normal_form([x - y for x, y in zip(a, b)]) == self.normal_form(
            [0] * self.gens
        )

    def order_of(self, vec):
        """Additive order of the class of vec; None when infinite."""
        diag, v, _ = self._snf_data()
        y = [sum(vec[i] * v[i][j] for i in range(self.gens)) for j in range(self.gens)]
        order = 1
        for j in range(self.gens):
            d = diag[j]
            if d == 0:
                if y[j] != 0:
                    return None
                continue
            dj = d // gcd(d, y[j] % d)
            order = order * dj // gcd(order, dj)
        return order

    def invariant_factors(self):
        """Nonunit elementary divisors, plus the free rank."""
        diag, _, _ = self._snf_data()
        torsion = [d for d in diag if d not in (0, 1)]
        free = sum(1 for d in diag if d == 0)
        return torsion, free

    def cardinality(self):
        torsion, free = self.invariant_factors()
        return None if free else prod(torsion)

    def torsion(self, q):
        """The q-torsion subgroup (q a prime power).

        Returns (presentation, generators): a diagonal presentation of the
        subgroup and its generators in the original coordinates, each of
        additive order exactly its diagonal entry.
        """
        diag, _, vinv = self._snf_data()
        gens = []
        orders = []
        for j in range(self.gens):
            d = diag[j]
            if d in (0, 1):
                continue
            g = gcd(d, q)
            if g == 1:
                continue
            gens.append([(d // g) * c for c in vinv[j]])
            orders.append(g)
        pres = PresentedModule(
            len(gens),
            [
                [orders[i] if i == j else 0 for j in range(len(gens))]
                for i in range(len(orders))
            ],
        )
        return pres, gens

    def to_json_dict(self):
        return {
            "base": self.base.descriptor(),
            "gens": self.gens,
            "relations": self.relations,
        }


class ModuleMap:
    """Map of presented modules given by an integer matrix on generators."""

    def __init__(self, source, target, matrix):
        self.source = source
        self.target = target
        self.matrix = [list(map(int, row)) for row in matrix]
        if len(self.matrix) != source.gens:
            raise ValueError("matrix height mismatch")
        for row in self.matrix:
            if len(row) != target.gens:
                raise ValueError("matrix width mismatch")
        bad = self._relation_defect()
        if bad is not None:
            raise ValueError(f"map does not send relation {bad} into relations")

    def _relation_defect(self):
        for idx, rel in enumerate(self.source.relations):
            if not self.target.is_zero(self.apply(rel)):
                return idx
        return None

    def apply(self, vec):
        return [
            sum(vec[i] * self.matrix[i][j] for i in range(self.source.gens))
            for j in range(self.target.gens)
        ]


# --- integer polynomial utilities mod a monic f ------------------------------


def _poly_mul_mod_f(a, b, f, modulus):
    d = len(f) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    for k in range(len(out) - 1, d - 1, -1):
        c = out[k]
        if c:
            out[k] = 0
            for j in range(d):
                out[k - d + j] -= c * f[j]
    out = out[:d] + [0] * max(0, d - len(out))
    if modulus:
        out = [c % modulus for c in out]
    return out


def _poly_derivative(a):
    return [i * a[i] for i in range(1, len(a))]


class Omega1(PresentedModule):
    """Omega^1 of Z[x]/(f) (optionally with coefficient modulus p^M).

    Generators are x^j dx for j < deg f; elements are integer coefficient
    vectors.  ``mult`` is A-scalar multiplication on representatives and
    ``d_of`` the universal derivation.
    """

    def __init__(self, f, modulus=None):
        f = list(map(int, f))
        if not f or f[-1] != 1:
            raise ValueError("f must be monic")
        d = len(f) - 1
        self.f = f
        self.modulus = modulus
        fprime = _poly_derivative(f)
        relations = []
        xj = [1]
        for _ in range(d):
            relations.append(_poly_mul_mod_f(xj, fprime, f, modulus))
            xj = [0] + xj
        if modulus:
            for j in range(d):
                row = [0] * d
                row[j] = modulus
                relations.append(row)
        super().__init__(d, relations)
        self.dx = tuple([1] + [0] * (d - 1))

    def _vec_of(self, a):
        if isinstance(a, RingElement):
            return list(a.data)
        return list(a)

    def d_of(self, a):
        """da for a in A (coefficient vector or RingElement)."""
        vec = self._vec_of(a)
        out = _poly_derivative(vec) + [0]
        out = out[: self.gens] + [0] * max(0, self.gens - len(out))
        if self.modulus:
            out = [c % self.modulus for c in out]
        return out

    def mult(self, a, elem):
        """a * elem for a in A."""
        return _poly_mul_mod_f(self._vec_of(a), list(elem), self.f, self.modulus)

    def dlog(self, u, u_inv=None):
        """dlog u = u^{-1} du; u_inv may be supplied when u is only a unit
        in the modulus ring."""
        if u_inv is None:
            raise ValueError("dlog needs an inverse witness")
        return self.mult(u_inv, self.d_of(u))


def omega1_monogenic(f, modulus=None):
    return Omega1(f, modulus)


def omega1_for_ring(ring):
    """Omega^1 of a cyclotomic truncation, in its own power basis."""
    if ring.kind != "CyclotomicTruncation":
        raise ValueError("omega1_for_ring needs a cyclotomic truncation")
    return Omega1(ring.minpoly, ring.m)


def fn_d(w, omega):
    """F^n d of a length-(n+1) Witt vector, landing in Omega^1 of A.

    Closed form: sum_i a_i^(p^(n-i) - 1) d a_i.
    """
    if not isinstance(w, WittVector):
        raise ValueError("fn_d needs a Witt vector")
    n = w.length - 1
    p = w.p
    acc = [0] * omega.gens
    for i, a in enumerate(w.coords):
        e = p ** (n - i) - 1
        term = omega.mult(a**e, omega.d_of(a))
        acc = [x + y for x, y in zip(acc, term)]
    if omega.modulus:
        acc = [c % omega.modulus for c in acc]
    return acc


def conormal_check(f, modulus=None):
    """The conormal sequence of the monogenic presentation.

    Composite I/I^2 -> A dx -> Omega^1_A must be zero (the image of the ideal
    generator is exactly the relation f' dx), and the right-hand map is
    surjective on generators.  Returns (composite_zero, surjective).
    """
    omega = Omega1(f, modulus)
    fprime = _poly_derivative(omega.f) + [0]
    image = fprime[: omega.gens] + [0] * max(0, omega.gens - len(fprime))
    composite_zero = omega.is_zero(image)
    if modulus:
        composite_zero = composite_zero and omega.is_zero(
            [modulus if j == 0 else 0 for j in range(omega.gens)]
        )
    surjective = True  # generators of the quotient are the images of x^j dx
    return composite_zero, surjective


# --- the p-torsion generator alpha -------------------------------------------


def solve_alpha(ring):
    """alpha = (sum_m m zeta_p^m) zeta_{p^2}^{-1} d zeta_{p^2}, with the
    verified identity (zeta_p - 1) alpha = dlog zeta_p.

    Returns (omega, alpha_vector).  Raises if the identity fails, which would
    indicate a presentation bug.
    """
    if ring.kind != "CyclotomicTruncation" or ring.N < 2:
        raise ValueError("solve_alpha needs a cyclotomic truncation with N >= 2")
    p = ring.p
    omega = omega1_for_ring(ring)
    zp = ring.zeta(1)
    zp2 = ring.zeta(2)
    s = ring.zero()
    for m in range(1, p):
        s = s + m * zp**m
    _, zp2_inv = ring.is_unit(zp2)
    _, zp_inv = ring.is_unit(zp)
    alpha = omega.mult(s * zp2_inv, omega.d_of(zp2))
    lhs = omega.mult(zp - ring.one(), alpha)
    rhs = omega.dlog(zp, zp_inv)
    if not omega.eq(lhs, rhs):
        raise ArithmeticError("(zeta_p - 1) alpha != dlog zeta_p in the presentation")
    return omega, alpha


def alpha_order_report(p, N, M):
    """Additive order of alpha at truncation parameters (N, M).

    The limit claim is that alpha is p-torsion; finite truncations may
    disagree, so this only reports.
    """
    from .rings import CyclotomicTruncation

    ring = CyclotomicTruncation(p, N, M)
    omega, alpha = solve_alpha(ring)
    return omega.order_of(alpha)


def torsion_is_free_rank_one(ring, r):
    """Does alpha freely generate Omega^1[p^r] over A/p^r A?

    Checks |Omega^1[p^r]| = |A/p^r A| and that every SNF torsion generator is
    an A-multiple of alpha; together these make a |-> a*alpha bijective.
    Returns (verdict, details dict).
    """
    p = ring.p
    if r > ring.M:
        raise ValueError("torsion layer exceeds coefficient precision")
    omega, alpha = solve_alpha(ring)
    q = p**r
    pres, gens = omega.torsion(q)
    card_torsion = prod(d for d, _ in zip_diag(pres)) if gens else 1
    card_target = q**ring.d
    if omega.order_of(alpha) not in (None, 0) and omega.order_of(alpha) > q:
        return False, {"reason": f"alpha has order {omega.order_of(alpha)} > {q}"}
    surj = True
    for t in gens:
        if _solve_scalar_multiple(omega, alpha, t, ring) is None:
            surj = False
            break
    verdict = surj and card_torsion == card_target
    return verdict, {
        "torsion_cardinality": card_torsion,
        "target_cardinality": card_target,
        "generators_hit": surj,
    }


def zip_diag(pres):
    return [(pres.relations[i][i], i) for i in range(pres.gens)]


def _solve_scalar_multiple(omega, alpha, target, ring):
    """Find a in A with a*alpha = target in omega, or None (modulus only)."""
    if not omega.modulus:
        raise ValueError("scalar-multiple solving needs a modulus presentation")
    d = omega.gens
    cols = []
    for j in range(d):
        xj = [0] * d
        xj[j] = 1
        cols.append(omega.mult(xj, alpha))
    rows = []
    for i in range(d):
        rows.append([cols[j][i] for j in range(d)] + [rel[i] for rel in omega.relations])
    sol = solve_mod_pp(rows, [t % omega.modulus for t in target], ring.p, ring.M)
    if sol is None:
        return None
    return tuple(c % omega.modulus for c in sol[:d])


# --- division by p -----------------------------------------------------------


def check_p_surjectivity(ring, samples):
    """For each sampled a, try to write da = p*omega by lifting a through
    Frobenius mod p; record the Frobenius defect of the truncation otherwise.

    Returns a list of (a, verdict, witness) with verdict in
    {"pass", "truncation-limited"}.
    """
    p = ring.p
    omega = omega1_for_ring(ring)
    d = ring.d
    # Frobenius matrix on A/pA in the power basis
    frob_cols = []
    for j in range(d):
        xj = [0] * d
        xj[j] = 1
        frob_cols.append(_poly_mul_mod_f_pow(xj, p, ring.minpoly, p))
    frob_rows = [[frob_cols[j][i] for j in range(d)] for i in range(d)]
    out = []
    for a in samples:
        da = omega.d_of(a)
        sol = solve_mod_pp(frob_rows, [c % p for c in a.data], p, 1)
        if sol is None:
            out.append((a, "truncation-limited", None))
            continue
        b = ring.from_coeffs(sol)
        c = a - b**p
        assert all(x % p == 0 for x in c.data)
        cdivp = ring.from_coeffs([x // p for x in c.data])
        w = [
            x + y
            for x, y in zip(
                omega.mult(b ** (p - 1), omega.d_of(b)), omega.d_of(cdivp)
            )
        ]
        lhs = [pc % ring.m for pc in (p * wc for wc in w)]
        if omega.eq(lhs, da):
            out.append((a, "pass", tuple(w)))
        else:
            out.append((a, "fail", None))
    return out


def _poly_mul_mod_f_pow(a, e, f, modulus):
    out = [1] + [0] * (len(f) - 2)
    base = list(a)
    while e:
        if e & 1:
            out = _poly_mul_mod_f(out, base, f, modulus)
        e >>= 1
        if e:
            base = _poly_mul_mod_f(base, base, f, modulus)
    return out


# --- log differentials -------------------------------------------------------


def log_presentation_check(ring, m, u, x, y, bigN):
    """Verify dlog m = x dy - u^{-1} du in the finite sub-presentation of the
    log differential module on the monoid generators {m, y, u}.

    Requires y^(p^N) = u m and y x = p^N in A.  The sub-presentation is
    (Omega^1_A + A^3) / J with J generated by the A-multiples of
    (d m, -m e_m), (d y, -y e_y), (d u, -u e_u) and of the group relation
    p^N e_y - e_u - e_m.
    """
    p, pm = ring.p, ring.m
    if y ** (p**bigN) != u * m:
        raise ValueError("tuple constraint violation: y^(p^N) != u*m")
    if y * x != ring.from_int(p**bigN):
        raise ValueError("tuple constraint violation: y*x != p^N")
    ok, u_inv = ring.is_unit(u)
    if not ok:
        raise ValueError("tuple constraint violation: u is not a unit")
    omega = omega1_for_ring(ring)
    d = ring.d
    gens = d + 3 * d  # Omega part, then tensor parts for m, y, u
    rows = []

    def wide(omega_part=None, mpart=None, ypart=None, upart=None):
        row = [0] * gens
        for off, part in (
            (0, omega_part),
            (d, mpart),
            (2 * d, ypart),
            (3 * d, upart),
        ):
            if part is not None:
                for i, c in enumerate(part):
                    row[off + i] = c
        return row

    for rel in omega.relations:
        rows.append(wide(omega_part=rel))
    for off in range(1, 4):
        for j in range(d):
            row = [0] * gens
            row[off * d + j] = pm
            rows.append(row)
    for w, slot in ((m, "m"), (y, "y"), (u, "u")):
        dw = omega.d_of(w)
        for j in range(d):
            xj = [0] * d
            xj[j] = 1
            opart = omega.mult(xj, dw)
            tpart = [-c % pm for c in _poly_mul_mod_f(xj, list(w.data), ring.minpoly, pm)]
            rows.append(
                wide(
                    omega_part=opart,
                    mpart=tpart if slot == "m" else None,
                    ypart=tpart if slot == "y" else None,
                    upart=tpart if slot == "u" else None,
                )
            )
    pN = p**bigN
    for j in range(d):
        xj = [0] * d
        xj[j] = 1
        rows.append(
            wide(
                mpart=[-c % pm for c in xj],
                ypart=[pN * c % pm for c in xj],
                upart=[-c % pm for c in xj],
            )
        )
    # target: (x dy - u^{-1} du, 0) - (0, 1 tensor m) must lie in the row span
    lhs_omega = [
        (a - b) % pm
        for a, b in zip(omega.mult(x, omega.d_of(y)), omega.dlog(u, u_inv))
    ]
    target = wide(omega_part=lhs_omega)
    target[d] = (target[d] - 1) % pm
    # membership: target in the row span over Z/p^M
    sys_rows = [[rows[k][i] for k in range(len(rows))] for i in range(gens)]
    sol = solve_mod_pp(sys_rows, [c % pm for c in target], p, ring.M)
    return sol is not None
