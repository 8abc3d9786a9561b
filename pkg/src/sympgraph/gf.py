"""Table-driven arithmetic in GF(p^m) and relative towers GF(q) <= GF(q^nu).

Elements are integers 0..q-1.  An element with polynomial coefficients
(c_0, c_1, ..., c_{m-1}) over GF(p) (constant term first) has index
sum(c_i * p**i), so 0 is zero, 1 is one, and the prime subfield occupies
indices 0..p-1 in every extension.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import NonPrime, SizeExceeded, TowerMismatch

MAX_FIELD = 1 << 16
DENSE_TABLE_LIMIT = 1 << 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, m) with q == p**m, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


# -- polynomials over GF(p): coefficient lists, constant term first ----------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = _trim(list(a))
    inv_lead = pow(b[-1], p - 2, p)
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _trim(a)
    return a


def _monics(p: int, deg: int):
    for low in product(range(p), repeat=deg):
        yield list(reversed(low)) + [1]


def _is_irreducible(f: list[int], p: int) -> bool:
    m = len(f) - 1
    if m == 1:
        return True
    for x in range(p):
        if sum(c * pow(x, i, p) for i, c in enumerate(f)) % p == 0:
            return False
    for d in range(2, m // 2 + 1):
        for g in _monics(p, d):
            if not _poly_mod(f, g, p):
                return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m over GF(p).

    Candidates x^m + c_{m-1}x^{m-1} + ... + c_0 are tried in increasing
    order of the index sum(c_i p^i).
    """
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        f = low + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError(f"no irreducible of degree {m} over GF({p})")


@dataclass(frozen=True, eq=False)
class FieldCtx:
    """A fully enumerated finite field GF(p^m)."""

    p: int
    m: int
    modulus: tuple[int, ...]
    q: int
    digits: np.ndarray  # (q, m) coefficient vectors
    exp_table: np.ndarray  # exp_table[i] = g^i for a fixed primitive g, length 2(q-1)
    log_table: np.ndarray  # log_table[0] = -1
    primitive: int
    frobenius: np.ndarray
    add_table: np.ndarray | None
    mul_table: np.ndarray | None
    neg_table: np.ndarray
    inv_table: np.ndarray

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.m})"

    @property
    def elements(self) -> range:
        return range(self.q)

    @property
    def nonzero(self) -> range:
        return range(1, self.q)

    def _index(self, dig) -> int:
        return int(sum(int(c) * self.p ** i for i, c in enumerate(dig)))

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return int(self.add_table[a, b])
        return self._index((self.digits[a] + self.digits[b]) % self.p)

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, int(self.neg_table[b]))

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return int(self.mul_table[a, b])
        if a == 0 or b == 0:
            return 0
        return int(self.exp_table[self.log_table[a] + self.log_table[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def frob_power(self, a: int, t: int) -> int:
        """a^(p^t)."""
        return self.pow(a, self.p ** (t % self.m))

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.p

    def element_str(self, a: int) -> str:
        if self.m == 1:
            return str(a)
        terms = []
        for i, c in enumerate(self.digits[a]):
            if c:
                mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
                terms.append(mono if c == 1 and i else f"{c}{'' if i == 0 else mono}")
        return "+".join(reversed(terms)) or "0"

    # vectorised helpers, used on arrays of element indices
    def vadd(self, a, b):
        if self.add_table is not None:
            return self.add_table[a, b]
        a, b = np.asarray(a), np.asarray(b)
        d = (self.digits[a] + self.digits[b]) % self.p
        return d @ (self.p ** np.arange(self.m))

    def vmul(self, a, b):
        if self.mul_table is not None:
            return self.mul_table[a, b]
        a, b = np.asarray(a), np.asarray(b)
        la, lb = self.log_table[a], self.log_table[b]
        out = self.exp_table[np.where((la < 0) | (lb < 0), 0, la + lb)]
        return np.where((la < 0) | (lb < 0), 0, out)


def _polymul_digits(a, b, modulus, p):
    m = len(modulus) - 1
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = (prod[i + j] + x * y) % p
    r = _poly_mod(prod, list(modulus), p)
    return r + [0] * (m - len(r))


def field_build(p: int, m: int) -> FieldCtx:
    """Build GF(p^m) with the lexicographically least irreducible modulus."""
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    q = p ** m
    if q > MAX_FIELD:
        raise SizeExceeded(f"GF({p}^{m}) exceeds the desk-scale bound {MAX_FIELD}")

    modulus = least_irreducible(p, m)
    powers = p ** np.arange(m)
    digits = np.array(
        [[(x // p ** i) % p for i in range(m)] for x in range(q)], dtype=np.int64
    ).reshape(q, m)

    # primitive element: least index whose multiplicative order is q-1
    exp_list = None
    for g in range(1, q):
        gd = list(digits[g])
        cur = [1] + [0] * (m - 1)
        seq = []
        for _ in range(q - 1):
            idx = int(np.dot(cur, powers))
            if seq and idx == 1:
                break
            seq.append(idx)
            cur = _polymul_digits(cur, gd, modulus, p)
        if len(seq) == q - 1 and int(np.dot(cur, powers)) == 1:
            exp_list, primitive = seq, g
            break
    if exp_list is None:
        raise AssertionError("no primitive element found")

    exp_table = np.array(exp_list + exp_list, dtype=np.int64)
    log_table = np.full(q, -1, dtype=np.int64)
    log_table[exp_table[: q - 1]] = np.arange(q - 1)

    inv_table = np.zeros(q, dtype=np.int64)
    nz = np.arange(1, q)
    inv_table[nz] = exp_table[(q - 1 - log_table[nz]) % (q - 1)]
    neg_table = ((-digits) % p) @ powers

    frobenius = np.zeros(q, dtype=np.int64)
    frobenius[nz] = exp_table[(log_table[nz] * p) % (q - 1)]

    add_table = mul_table = None
    if q <= DENSE_TABLE_LIMIT:
        add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ powers
        la = log_table[:, None] + log_table[None, :]
        mul_table = exp_table[np.maximum(la, 0)]
        mul_table[0, :] = 0
        mul_table[:, 0] = 0
        for t in (add_table, mul_table):
            t.setflags(write=False)
    for t in (digits, exp_table, log_table, inv_table, neg_table, frobenius):
        t.setflags(write=False)

    return FieldCtx(
        p=p, m=m, modulus=modulus, q=q, digits=digits, exp_table=exp_table,
        log_table=log_table, primitive=primitive, frobenius=frobenius,
        add_table=add_table, mul_table=mul_table, neg_table=neg_table,
        inv_table=inv_table,
    )


_FIELD_CACHE: dict[tuple[int, int], FieldCtx] = {}


def get_field(q: int) -> FieldCtx:
    """Cached field_build for a prime power given as a single integer."""
    pm = prime_power(q)
    if pm is None:
        raise NonPrime(f"{q} is not a prime power")
    if pm not in _FIELD_CACHE:
        _FIELD_CACHE[pm] = field_build(*pm)
    return _FIELD_CACHE[pm]


def field_aut_group(f: FieldCtx) -> list[np.ndarray]:
    """The m automorphisms x -> x^(p^t), t = 0..m-1, as index permutations."""
    auts = [np.arange(f.q, dtype=np.int64)]
    for _ in range(1, f.m):
        auts.append(f.frobenius[auts[-1]])
    return auts


def frobenius_exponent(f: FieldCtx, perm) -> int | None:
    """Return t if perm equals x -> x^(p^t), else None."""
    perm = np.asarray(perm)
    for t, aut in enumerate(field_aut_group(f)):
        if np.array_equal(aut, perm):
            return t
    return None


@dataclass(frozen=True, eq=False)
class TowerCtx:
    """GF(q) embedded in GF(q^nu) with a fixed power basis."""

    base: FieldCtx
    big: FieldCtx
    nu: int
    embed: np.ndarray  # base index -> big index
    pullback: np.ndarray  # big index -> base index, -1 outside the subfield
    basis: tuple[int, ...]
    coords: np.ndarray  # (big.q, nu) base indices

    def lift(self, c) -> int:
        """sum c_i * basis_i as an element of big."""
        acc = 0
        for ci, b in zip(c, self.basis):
            acc = self.big.add(acc, self.big.mul(int(self.embed[ci]), b))
        return acc


def tower_build(base: FieldCtx, nu: int) -> TowerCtx:
    if nu < 1:
        raise TowerMismatch("tower degree must be positive")
    p, m, q = base.p, base.m, base.q
    if q ** nu > MAX_FIELD:
        raise SizeExceeded(f"GF({q}^{nu}) exceeds the desk-scale bound")
    big = base if nu == 1 else field_build(p, m * nu)
    Q = big.q

    # subfield of order q: zero plus the powers of g^((Q-1)/(q-1))
    step = (Q - 1) // (q - 1)
    sub = sorted({0} | {int(big.exp_table[step * j]) for j in range(q - 1)})
    assert all(big.pow(x, q) == x for x in sub)

    # send the class of x in base to the least subfield root of base.modulus;
    # prime-field coefficients have the same index in both fields
    def ev(r):
        acc = 0
        for i, c in enumerate(base.modulus):
            acc = big.add(acc, big.mul(c, big.pow(r, i)))
        return acc

    root = min(r for r in sub if ev(r) == 0) if m > 1 else None
    embed = np.zeros(q, dtype=np.int64)
    for a in range(q):
        acc = 0
        for i, c in enumerate(base.digits[a]):
            term = int(c) if i == 0 else big.mul(int(c), big.pow(root, i))
            acc = big.add(acc, term)
        embed[a] = acc
    pullback = np.full(Q, -1, dtype=np.int64)
    pullback[embed] = np.arange(q)
    if sorted(embed.tolist()) != sub:
        raise AssertionError("embedding image is not the order-q subfield")

    beta = big.primitive
    basis = tuple(big.pow(beta, i) for i in range(nu))
    coords = np.full((Q, nu), -1, dtype=np.int64)
    tower = TowerCtx(base, big, nu, embed, pullback, basis, coords)
    for c in product(range(q), repeat=nu):
        x = tower.lift(c)
        if coords[x, 0] != -1:
            raise AssertionError("power basis is not independent over the base")
        coords[x] = c
    for t in (embed, pullback, coords):
        t.setflags(write=False)
    return tower


def rel_trace(t: TowerCtx, x: int) -> int:
    """Relative trace GF(q^nu) -> GF(q), returned as a base index."""
    big, q = t.big, t.base.q
    acc, y = 0, x
    for _ in range(t.nu):
        acc = big.add(acc, y)
        y = big.pow(y, q)
    out = int(t.pullback[acc])
    assert out >= 0, "trace left the base field"
    return out
