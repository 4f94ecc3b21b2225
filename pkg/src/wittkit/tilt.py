"""Finite-precision tilts and the maps back to Witt vectors.

Two complementary models:

* Lift model.  A TiltElement over a cyclotomic truncation A is a tuple of
  lifts (t^(0), ..., t^(T)) in A with (t^(i+1))^p = t^(i) mod pA.
  Multiplication is exact and coordinatewise; addition is the stabilized
  limit (s+t)^(i) = (s^(i+k) + t^(i+k))^(p^k) truncated at k = delta, losing
  delta lifts.  theta_r sends a truncated Witt vector of tilts to W_r(A);
  theta (= theta_1 after Frobenius) sends it to A.

* Characteristic-p model.  The tilt of the standard cyclotomic tower is
  approximated by F_p[s]/(s^(K p^e)) with eps = 1 + t, t = s^(p^e).  This is
  an honest ring, so W_n of it has exact arithmetic; the q-logarithm and the
  Frobenius fixed-point equation phi(y) = (([eps^p]-1)/([eps]-1)) y live
  here.
"""

import itertools

from .modlin import nullspace_mod_p, solve_mod_p
from .rings import CharPQuotient, RingElement
from .witt import (
    ScalarOps,
    WittVector,
    eval_poly_ops,
    frobenius,
    get_table,
    multi_sum_polys,
    teichmuller,
    verschiebung,
    witt_add,
    witt_divide_exact,
    witt_is_unit,
    witt_mul,
    witt_neg,
    witt_one,
    witt_zero,
)


class TiltPrecisionError(ArithmeticError):
    """Stabilized addition failed its agreement check, or depth ran out."""


def default_delta(ring):
    return min(getattr(ring, "M", 1), 3)


def _omega_teichmuller(c, m, p):
    """Teichmuller representative of c mod p^M: the fixed point of x -> x^p."""
    c %= m
    seen = c
    for _ in range(64):
        nxt = pow(seen, p, m)
        if nxt == seen:
            return seen
        seen = nxt
    raise ArithmeticError("Teichmuller iteration did not converge")


class TiltElement:
    """A depth-T p-power compatible sequence of lifts in A."""

    __slots__ = ("base", "lifts")

    def __init__(self, base, lifts, check=True):
        lifts = tuple(lifts)
        if not lifts:
            raise ValueError("depth must be >= 0")
        self.base = base
        self.lifts = lifts
        if check:
            self.validate()

    @property
    def depth(self):
        return len(self.lifts) - 1

    def validate(self):
        p = self.base.p
        for i in range(self.depth):
            diff = self.lifts[i + 1] ** p - self.lifts[i]
            if any(c % p for c in diff.data):
                raise ValueError(
                    f"lift {i + 1} is not a p-th root of lift {i} mod p"
                )
        return self

    def lift(self, i):
        if i > self.depth:
            raise TiltPrecisionError(
                f"depth shortfall: lift {i} requested, depth {self.depth}"
            )
        return self.lifts[i]

    def truncated(self, depth):
        if depth > self.depth:
            raise TiltPrecisionError("cannot extend depth")
        return TiltElement(self.base, self.lifts[: depth + 1], check=False)

    def root(self, k=1):
        """p^k-th root: shift the lift sequence; depth drops by k."""
        if k > self.depth:
            raise TiltPrecisionError("depth shortfall for root")
        return TiltElement(self.base, self.lifts[k:], check=False)

    def frobenius(self):
        """p-th power, exact and coordinatewise."""
        p = self.base.p
        return TiltElement(self.base, tuple(c**p for c in self.lifts), check=False)

    def __mul__(self, other):
        d = min(self.depth, other.depth)
        return TiltElement(
            self.base,
            tuple(a * b for a, b in zip(self.lifts[: d + 1], other.lifts[: d + 1])),
            check=False,
        )

    def __pow__(self, e):
        return TiltElement(self.base, tuple(c**e for c in self.lifts), check=False)

    def __neg__(self):
        # p odd: (-x)^p = -x^p, so negation keeps compatibility
        return TiltElement(self.base, tuple(-c for c in self.lifts), check=False)

    def __eq__(self, other):
        return (
            isinstance(other, TiltElement)
            and other.base == self.base
            and other.lifts == self.lifts
        )

    def __hash__(self):
        return hash(self.lifts)

    def is_zero(self):
        return all(c.is_zero() for c in self.lifts)

    def serialize(self):
        body = "; ".join(self.base.format_element(c) for c in self.lifts)
        return f"tilt[depth={self.depth}; {body}]"

    def __repr__(self):
        return self.serialize()


def tilt_const(base, c, depth):
    """The constant c in F_p inside the tilt, with exactly compatible lifts."""
    p, m = base.p, base.m
    w = _omega_teichmuller(c, m, p)
    elem = base.element((w,) + (0,) * (base.d - 1))
    return TiltElement(base, (elem,) * (depth + 1), check=False)


def tilt_zero(base, depth):
    return tilt_const(base, 0, depth)


def tilt_one(base, depth):
    return tilt_const(base, 1, depth)


def tilt_mul(s, t):
    return s * t


def tilt_sum(elems, delta=None, check_stability=True):
    """Stabilized sum: result lift i is (sum of lifts at i+delta)^(p^delta).

    Depth drops by delta.  The stabilization check compares the delta and
    delta-1 approximants mod p^min(M, delta) and raises on disagreement.
    Zero addends are dropped first, so adding zero is exact at full depth.
    """
    elems = [e for e in elems if not e.is_zero()]
    if not elems:
        raise ValueError("tilt_sum of an empty collection needs a base")
    base = elems[0].base
    if len(elems) == 1:
        return elems[0]
    p = base.p
    if delta is None:
        delta = default_delta(base)
    depth = min(e.depth for e in elems)
    if delta > depth:
        raise TiltPrecisionError(
            f"depth shortfall: delta={delta} exceeds common depth {depth}"
        )
    new_lifts = []
    for i in range(depth - delta + 1):
        acc = base.zero()
        for e in elems:
            acc = acc + e.lift(i + delta)
        val = acc ** (p**delta)
        if check_stability and delta >= 1:
            prev = base.zero()
            for e in elems:
                prev = prev + e.lift(i + delta - 1)
            prev_val = prev ** (p ** (delta - 1))
            agree_mod = p ** min(getattr(base, "M", 1), delta)
            if any((a - b) % agree_mod for a, b in zip(val.data, prev_val.data)):
                raise TiltPrecisionError(
                    f"tilt addition did not stabilize at delta={delta}"
                )
        new_lifts.append(val)
    return TiltElement(base, new_lifts, check=False)


def tilt_add(s, t, delta=None):
    if s.is_zero():
        return t
    if t.is_zero():
        return s
    return tilt_sum([s, t], delta=delta)


def epsilon(ring, T):
    """The tilt element with lifts (1, zeta_p, ..., zeta_{p^T})."""
    if ring.kind != "CyclotomicTruncation":
        raise ValueError("epsilon needs a cyclotomic truncation")
    if T > ring.N:
        raise ValueError(f"depth shortfall: T = {T} > N = {ring.N}")
    lifts = [ring.one()] + [ring.zeta(i) for i in range(1, T + 1)]
    return TiltElement(ring, lifts)


# --- Witt vectors of tilts ----------------------------------------------------


class _TiltOps(ScalarOps):
    def __init__(self, base, depth, delta):
        self.base = base
        self.depth = depth
        self.delta = delta

    def zero(self):
        return tilt_zero(self.base, self.depth)

    def one(self):
        return tilt_one(self.base, self.depth)

    def mul(self, a, b):
        return a * b

    def scale_int(self, a, c):
        c %= self.base.p  # the tilt has characteristic p
        if c == 0:
            return tilt_zero(self.base, min(a.depth, self.depth))
        return tilt_const(self.base, c, a.depth) * a

    def sum(self, items):
        items = [x for x in items if not x.is_zero()]
        if not items:
            return self.zero()
        if len(items) == 1:
            return items[0]
        return tilt_sum(items, delta=self.delta)


class TiltWittVector:
    """Truncated W(A-flat) in the lift model: coordinates are TiltElements."""

    __slots__ = ("base", "p", "coords")

    def __init__(self, base, coords):
        coords = tuple(coords)
        if not coords:
            raise ValueError("length must be >= 1")
        self.base = base
        self.p = base.p
        self.coords = coords

    @property
    def length(self):
        return len(self.coords)

    @property
    def depth(self):
        return min(c.depth for c in self.coords)

    def __eq__(self, other):
        return (
            isinstance(other, TiltWittVector)
            and other.base == self.base
            and other.coords == self.coords
        )

    def __repr__(self):
        return "TW[" + "; ".join(c.serialize() for c in self.coords) + "]"


def tilt_teichmuller(t, n):
    zero = tilt_zero(t.base, t.depth)
    return TiltWittVector(t.base, (t,) + (zero,) * (n - 1))


def _tilt_eval(polys, values, base, delta):
    depth = min(v.depth for v in values)
    ops = _TiltOps(base, depth, delta)
    return [eval_poly_ops(poly, values, ops) for poly in polys]


def tilt_witt_add(u, v, delta=None):
    base = u.base
    if delta is None:
        delta = default_delta(base)
    table = get_table(base.p, u.length)
    coords = _tilt_eval(table.sum_polys, list(u.coords) + list(v.coords), base, delta)
    return TiltWittVector(base, coords)


def tilt_witt_mul(u, v):
    base = u.base
    table = get_table(base.p, u.length)
    coords = _tilt_eval(
        table.prod_polys, list(u.coords) + list(v.coords), base, default_delta(base)
    )
    return TiltWittVector(base, coords)


def tilt_witt_sum_many(vectors, delta=None):
    """k-fold Witt sum with a single stabilization cost per coordinate."""
    base = vectors[0].base
    if delta is None:
        delta = default_delta(base)
    n = vectors[0].length
    polys = multi_sum_polys(base.p, n, len(vectors))
    values = [c for vec in vectors for c in vec.coords]
    return TiltWittVector(base, _tilt_eval(polys, values, base, delta))


def tilt_witt_phi_inv(u):
    """phi^{-1} on the lift model: coordinatewise p-th root (depth - 1)."""
    return TiltWittVector(u.base, tuple(c.root(1) for c in u.coords))


def tilt_witt_frobenius(u, delta=None):
    base = u.base
    if delta is None:
        delta = default_delta(base)
    table = get_table(base.p, u.length)
    coords = _tilt_eval(table.frob_polys, list(u.coords), base, delta)
    return TiltWittVector(base, coords)


def xi_element(ring, T, length, delta=None):
    """xi = 1 + [eps^(1/p)] + ... + [eps^(1/p)]^(p-1), the ker-theta generator."""
    p = ring.p
    root = epsilon(ring, T).root(1)
    terms = [tilt_teichmuller(tilt_one(ring, root.depth), length)]
    for i in range(1, p):
        terms.append(tilt_teichmuller(root**i, length))
    return tilt_witt_sum_many(terms, delta=delta)


# --- theta maps ---------------------------------------------------------------


def theta_r(w, r):
    """pr_r of the canonical map to the F-limit: W(A-flat) -> W_r(A).

    Computed through the Teichmuller expansion w = sum_i V^i([t_i]):
    theta_r(w) = sum_{i < min(len, r)} V^i([t_i^(r)]), each coordinate
    evaluated at its r-th lift.  (Equivalently, via the p-adic digits
    sum p^i [t_i^(1/p^i)], using that the lifts are p-power compatible.)
    """
    base = w.base
    p = base.p
    acc = witt_zero(base, p, r)
    for i, t in enumerate(w.coords[: min(w.length, r)]):
        term = teichmuller(t.lift(r), p, r - i)
        for _ in range(i):
            term = verschiebung(term)
        acc = witt_add(acc, term)
    return acc


def theta(w):
    """theta = theta_1 after Frobenius: sum_i p^i t_i^(0) in A."""
    base = w.base
    acc = base.zero()
    for i, t in enumerate(w.coords):
        acc = acc + (base.p**i) * t.lift(0)
    return acc


# --- kernel generators of Frobenius powers ------------------------------------


def check_ker_F_generators(ring, n, rng=None, sample_budget=64, exhaustive_cap=None):
    """Membership and truncation-level co-membership for ker F^n.

    (i)  F^n(z_{n+1}) = 0 and F(sum_{i<p^n} [zeta_{p^(n+1)}]^i) = 0, exactly.
    (ii) constructed members z_{n+1}*r divide back by z_{n+1}.
    (iii) sampled or exhaustive kernel elements are probed for divisibility;
          failures are truncation artifacts and make the verdict
          "truncation-limited" rather than "fail".

    Returns a dict of named results.
    """
    from .witt import z_element

    p = ring.p
    if ring.N < n + 1:
        raise ValueError("depth shortfall: need N >= n+1")
    z = z_element(ring, n + 1)
    fn_z = z
    for _ in range(n):
        fn_z = frobenius(fn_z)
    membership_zn = fn_z.is_zero()

    big = witt_zero(ring, p, n + 1)
    zeta = ring.zeta(n + 1)
    for i in range(p**n):
        big = witt_add(big, teichmuller(zeta**i, p, n + 1))
    membership_big = frobenius(big).is_zero()

    constructed_ok = True
    witnesses = []
    if rng is not None:
        from .witt import random_witt

        for _ in range(4):
            r = random_witt(ring, p, n + 1, rng)
            w = witt_mul(z, r)
            wk = w
            for _ in range(n):
                wk = frobenius(wk)
            if not wk.is_zero():
                constructed_ok = False
                witnesses.append(("constructed member escaped the kernel", repr(w)))
                continue
            q = witt_divide_exact(w, z)
            if q is None or witt_mul(z, q) != w:
                constructed_ok = False
                witnesses.append(("constructed member did not divide", repr(w)))

    probed = divisible = 0
    if exhaustive_cap is not None and ring.cardinality() ** (n + 1) <= exhaustive_cap:
        from .witt import raw_witt_ops

        raw = raw_witt_ops(ring, p, n + 1)
        count = 0
        for payload in raw.enumerate_payloads():
            w = raw.wrap(payload)
            wk = w
            for _ in range(n):
                wk = frobenius(wk)
            if wk.is_zero():
                probed += 1
                if witt_divide_exact(w, z) is not None:
                    divisible += 1
            count += 1
            if probed >= sample_budget:
                break
    verdict = "pass" if (membership_zn and membership_big and constructed_ok) else "fail"
    if verdict == "pass" and probed and divisible < probed:
        verdict = "truncation-limited"
    return {
        "membership_z": membership_zn,
        "membership_big_sum": membership_big,
        "constructed_members_divide": constructed_ok,
        "kernel_probed": probed,
        "kernel_divisible": divisible,
        "verdict": verdict,
        "witnesses": witnesses,
    }


# --- the q-logarithm (characteristic-p model) ---------------------------------


class QLogDivisionError(ArithmeticError):
    def __init__(self, term, precision):
        super().__init__(
            f"[{term}]_q does not divide the term-{term} numerator at precision {precision}"
        )
        self.term = term
        self.precision = precision


def eps_charp(ring):
    """eps = 1 + t in the characteristic-p tilt model."""
    return ring.one() + ring.t_element()


def q_log(x, q, terms):
    """Partial sum of log_q([x]) = sum (-1)^(n-1) q^(-n(n-1)/2)
    ([x]-1)([x]-q)...([x]-q^(n-1)) / [n]_q.

    x and q are Witt vectors over the char-p model (q = [eps] a unit).
    Returns (value, per_term) where per_term[n] records the quotient witness
    and whether the numerator vanished.
    """
    ring = x.ring
    p, length = x.p, x.length
    one = witt_one(ring, p, length)
    ok, q_inv = witt_is_unit(q)
    if not ok:
        raise ValueError("q must be a unit")
    acc = witt_zero(ring, p, length)
    per_term = {}
    numerator = one
    q_pow = one
    for n in range(1, terms + 1):
        numerator = witt_mul(numerator, witt_add(x, witt_neg(q_pow)))
        q_pow = witt_mul(q_pow, q)
        bracket = witt_zero(ring, p, length)
        qk = one
        for _ in range(n):
            bracket = witt_add(bracket, qk)
            qk = witt_mul(qk, q)
        if numerator.is_zero():
            per_term[n] = {"vanished": True, "term": None}
            continue
        quotient = witt_divide_exact(numerator, bracket)
        if quotient is None:
            raise QLogDivisionError(n, ring.descriptor())
        qinv_pow = witt_one(ring, p, length)
        for _ in range(n * (n - 1) // 2):
            qinv_pow = witt_mul(qinv_pow, q_inv)
        term = witt_mul(qinv_pow, quotient)
        if n % 2 == 0:
            term = witt_neg(term)
        acc = witt_add(acc, term)
        per_term[n] = {"vanished": False, "term": term}
    return acc, per_term


# --- Frobenius fixed-point equation (characteristic-p model) -------------------


def witt_phi(w):
    """The Frobenius automorphism of W_n over a characteristic-p ring:
    coordinatewise p-th power."""
    return WittVector(w.ring, w.p, tuple(c ** w.p for c in w.coords))


def enumerate_wn_fp(ring, p, n):
    """The image of W_n(F_p) inside W_n(ring), as a list."""
    out = []
    for combo in itertools.product(range(p), repeat=n):
        out.append(WittVector(ring, p, tuple(ring.from_int(c) for c in combo)))
    return out


def _frobenius_affine_solutions(ring, a, b):
    """All u in the char-p ring with u^p - a*u = b (F_p-affine in u)."""
    p, d = ring.p, ring.d
    cols = []
    for j in range(d):
        xj = [0] * d
        xj[j] = 1
        basis_elem = ring.from_coeffs(xj)
        img = basis_elem**p - a * basis_elem
        cols.append(img.data)
    rows = [[cols[j][i] for j in range(d)] for i in range(d)]
    part = solve_mod_p(rows, list(b.data), p)
    if part is None:
        return []
    kernel = nullspace_mod_p(rows, p)
    out = []
    for coeffs in itertools.product(range(p), repeat=len(kernel)):
        vec = list(part)
        for c, basis in zip(coeffs, kernel):
            for i in range(d):
                vec[i] += c * basis[i]
        out.append(ring.from_coeffs([v % p for v in vec]))
    return sorted(set(out), key=lambda e: e.data)


def frobenius_equation_solve(ring, n, solution_budget=100000):
    """Solutions of phi(y) = (([eps^p]-1)/([eps]-1)) y in W_n of the char-p
    model, with the claimed-form inclusion checked exactly.

    Returns a report dict with the ratio witness, the full solution list
    (level-by-level affine-linear solving; exact), the claimed-form subset
    c*([eps]-1) for c in W_n(F_p), and the spurious remainder classified by
    minimal annihilating t-power.
    """
    if not isinstance(ring, CharPQuotient):
        raise ValueError("the fixed-point solver runs on the char-p model")
    p = ring.p
    eps = eps_charp(ring)
    one = witt_one(ring, p, n)
    mu = witt_add(teichmuller(eps, p, n), witt_neg(one))  # [eps] - 1
    mu_p = witt_add(teichmuller(eps**p, p, n), witt_neg(one))  # [eps^p] - 1
    ratio = witt_divide_exact(mu_p, mu)
    if ratio is None:
        raise ArithmeticError("([eps]-1) does not divide ([eps^p]-1) at this precision")

    inclusion_ok = True
    for c in enumerate_wn_fp(ring, p, n):
        y = witt_mul(c, mu)
        lhs = witt_phi(y)
        if lhs != witt_mul(ratio, y):
            inclusion_ok = False
            break
        if witt_mul(lhs, mu) != witt_mul(mu_p, y):
            inclusion_ok = False
            break

    # level-by-level enumeration: coordinate k of phi(y) = ratio * y is
    # y_k^p - (linear in y_k) = (known), since the product polynomial is
    # linear in its top variable
    partials = [tuple()]
    for k in range(n):
        new_partials = []
        for prefix in partials:
            a_coeff, b_const = _mul_coord_affine_parts(ratio, prefix, k)
            for u in _frobenius_affine_solutions(ring, a_coeff, b_const):
                new_partials.append(prefix + (u,))
                if len(new_partials) > solution_budget:
                    raise ArithmeticError("solution budget exceeded")
        partials = new_partials
    solutions = [WittVector(ring, p, coords) for coords in partials]

    claimed_set = {witt_mul(c, mu) for c in enumerate_wn_fp(ring, p, n)}
    claimed_found = []
    spurious_info = []
    for y in solutions:
        if y in claimed_set:
            claimed_found.append(y)
            continue
        # junk = deviation from the nearest claimed-form element; it is the
        # nilpotent truncation artifact, so classify by its valuation
        best_val, best_junk = -1, None
        for cform in claimed_set:
            junk = witt_add(y, witt_neg(cform))
            val = min(ring.s_valuation(c) for c in junk.coords)
            if val > best_val:
                best_val, best_junk = val, junk
        spurious_info.append(
            {
                "element": y,
                "junk": best_junk,
                "junk_s_valuation": best_val,
                "junk_t_annihilator": _min_annihilating_t_power(ring, best_junk),
            }
        )
    return {
        "ratio": ratio,
        "inclusion_exact": inclusion_ok,
        "solutions": solutions,
        "claimed": claimed_found,
        "spurious": spurious_info,
        "precision": {"ring": ring.descriptor(), "witt_length": n},
    }


def _mul_coord_affine_parts(ratio, prefix, k):
    """(a, b) with (ratio * y)_k = a*y_k + b given lower coordinates of y."""
    ring = ratio.ring
    p = ratio.p
    n = ratio.length

    def coord_at(u):
        y = WittVector(ring, p, prefix + (u,) + (ring.zero(),) * (n - k - 1))
        return witt_mul(ratio, y).coords[k]

    b = coord_at(ring.zero())
    # linearity in y_k lets us recover a from one probe with u = 1
    probe = coord_at(ring.one())
    a = probe - b
    return a, b


def _min_annihilating_t_power(ring, y):
    t = ring.t_element()
    power = ring.one()
    for j in range(ring.K + 1):
        if all((power * c).is_zero() for c in y.coords):
            return j
        power = power * t
    return None


def project_charp(src, dst, elem):
    """Truncate an element of charp(p,e,K_src) into charp(p,e,K_dst)."""
    if src.p != dst.p or src.e != dst.e or dst.K > src.K:
        raise ValueError("projection needs the same (p, e) and smaller K")
    return RingElement(dst, elem.data[: dst.d])


def project_charp_witt(src, dst, w):
    return WittVector(dst, w.p, tuple(project_charp(src, dst, c) for c in w.coords))
