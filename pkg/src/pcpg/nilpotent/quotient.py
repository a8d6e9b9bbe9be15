"""Nilpotent quotient: the largest class-``c`` quotient of a finite presentation.

The presentation is built one lower-central layer at a time.  Given a
consistent presentation ``Q`` of ``G / gamma_i(G)``, every relation of ``Q``
that could pick up a weight-``i`` correction gets a fresh central "tail"
generator.  Forcing collection to be confluent and the relators to vanish in
this cover yields linear relations among the tails; their Hermite form tells
which tails survive as the new layer ``gamma_i / gamma_{i+1}``.

Tails of the defining commutators ``[g_k, g_j]`` (``w(k) = i-1``, ``w(j) = 1``)
are ordered last, so every surviving tail is one of those and the new
generator is exactly that commutator.
"""

from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from ..freewords import Alphabet, Word, commutator
from ..intlinalg import hermite_normal_form
from .presentation import NilPresentation, PcPresentation


class _Layer:
    """Solved relations among ``ncols`` central tails.

    ``survivors`` are the tail columns that become generators; ``expr[t]``
    writes tail ``t`` over the survivors; ``power[s]`` is ``y_s^order[s]``.
    """

    def __init__(self, ncols: int, rows: List[List[int]]):
        H = hermite_normal_form(rows, ncols) if rows else []
        pivot_row = {}
        for r, row in enumerate(H):
            c = next(j for j, v in enumerate(row) if v)
            pivot_row[c] = r
        self.survivors: List[int] = []
        self.orders: List[int] = []
        for t in range(ncols):
            r = pivot_row.get(t)
            if r is None:
                self.survivors.append(t)
                self.orders.append(0)
            elif H[r][t] > 1:
                self.survivors.append(t)
                self.orders.append(H[r][t])
        pos = {t: s for s, t in enumerate(self.survivors)}
        ns = len(self.survivors)
        self.expr: List[List[int]] = [None] * ncols  # type: ignore[list-item]
        self.power: Dict[int, List[int]] = {}
        for t in range(ncols - 1, -1, -1):
            r = pivot_row.get(t)
            rest = [0] * ns
            if r is not None:
                row = H[r]
                for q in range(t + 1, ncols):
                    if row[q]:
                        for s, v in enumerate(self.expr[q]):
                            rest[s] -= row[q] * v
            if t in pos:
                unit = [0] * ns
                unit[pos[t]] = 1
                self.expr[t] = unit
                if r is not None:
                    self.power[pos[t]] = self.normalize(rest)
            else:
                self.expr[t] = rest
        self.expr = [self.normalize(v) for v in self.expr]

    def normalize(self, v: Sequence[int]) -> List[int]:
        v = list(v)
        for s, m in enumerate(self.orders):
            if m and not 0 <= v[s] < m:
                q, v[s] = divmod(v[s], m)
                # power vectors only involve later survivors
                for p, x in enumerate(self.power.get(s, ())):
                    v[p] += q * x
        return v


def _abelian_layer(P: NilPresentation):
    n = len(P.alphabet)
    rows = [r.exponent_sums(n) for r in P.relators]
    return _Layer(n, [row for row in rows if any(row)])


def _first_layer(P: NilPresentation) -> PcPresentation:
    layer = _abelian_layer(P)
    m = len(layer.survivors)
    names = [P.alphabet.names[t] for t in layer.survivors]
    powers = {}
    for s, o in enumerate(layer.orders):
        if o:
            powers[s] = layer.power.get(s, [0] * m)
    gens = P.alphabet.gens()
    return PcPresentation(
        names,
        [1] * m,
        layer.orders,
        powers,
        {},
        source=P,
        images=layer.expr,
        gen_words=[gens[t] for t in layer.survivors],
        definitions=[("epi", t) for t in layer.survivors],
    )


def _extend(Q: PcPresentation, i: int) -> PcPresentation:
    """Presentation of ``G / gamma_{i+1}`` from a consistent one of ``G / gamma_i``."""
    m = Q.n
    w = Q.weights
    defining = set()
    defined_epi = set()
    for d in Q.definitions:
        if d[0] == "conj":
            defining.add((d[1], d[2]))
        else:
            defined_epi.add(d[1])

    tails: List[tuple] = []
    candidates: List[tuple] = []
    for j in range(m):
        for k in range(j + 1, m):
            if (k, j) in defining or w[k] + w[j] > i:
                continue
            if w[j] == 1 and w[k] == i - 1:
                candidates.append(("conj", k, j))
            else:
                tails.append(("conj", k, j))
    for j in range(m):
        if Q.orders[j]:
            tails.append(("power", j))
    for r in range(len(Q.images)):
        if r not in defined_epi:
            tails.append(("epi", r))
    if i == 2:
        candidates.sort(key=lambda t: (t[2], t[1]))
    else:
        candidates.sort(key=lambda t: (t[1], t[2]))
    ncand = len(candidates)
    tails += candidates
    T = len(tails)
    col = {t: m + x for x, t in enumerate(tails)}
    # on weight 2 the tail stands for [g_j, g_k], i.e. the inverse of [g_k, g_j]
    sign = -1 if i == 2 else 1

    N = m + T
    pad = lambda v: list(v) + [0] * T
    powers = {j: pad(v) for j, v in Q.powers.items()}
    conj: Dict[Tuple[int, int], List[int]] = {k_j: pad(v) for k_j, v in Q.conj.items()}
    images = [pad(v) for v in Q.images]
    for t in tails:
        c = col[t]
        if t[0] == "conj":
            _, k, j = t
            v = conj.get((k, j))
            if v is None:
                v = [0] * N
                v[k] = 1
            v[c] += sign if t in candidates else 1
            conj[k, j] = v
        elif t[0] == "power":
            powers[t[1]][c] += 1
        else:
            images[t[1]][c] += 1
    flipped = _flipped_definitions(Q)
    cover_names = Q.names + [f"t{x}" for x in range(T)]
    cover_weights = w + [i] * T
    cover_orders = Q.orders + [0] * T
    _refresh(cover_names, cover_weights, cover_orders, powers, conj, flipped)
    cover = PcPresentation(
        cover_names,
        cover_weights,
        cover_orders,
        powers,
        conj,
        images=images,
        check=False,
    )

    rows: List[List[int]] = []

    def record(lhs, rhs, what):
        diff = [a - b for a, b in zip(lhs, rhs)]
        if any(diff[:m]):
            raise RuntimeError(f"inconsistent layer below weight {i} ({what})")
        tail = diff[m:]
        if any(tail):
            rows.append(tail)

    for row in _consistency_checks(cover, m):
        record(*row)
    zero = [0] * N
    assert Q.source is not None
    for r in Q.source.relators:
        record(cover._eval(r), zero, "relator")

    # relation columns, defining commutators last
    layer = _Layer(T, rows)
    first_candidate = T - ncand
    for t in layer.survivors:
        if t < first_candidate:
            raise RuntimeError(f"tail {tails[t]} survived without a defining commutator")
    new = len(layer.survivors)
    if new == 0:
        return Q

    def mapped(base, tail_col):
        v = list(base[:m]) + layer.expr[tail_col - m]
        return v

    out_powers = {}
    for j, v in Q.powers.items():
        c = col.get(("power", j))
        out_powers[j] = mapped(v, c) if c is not None else list(v) + [0] * new
    out_conj = {}
    for (k, j), v in Q.conj.items():
        out_conj[k, j] = list(v) + [0] * new
    for t in tails:
        if t[0] != "conj":
            continue
        _, k, j = t
        base = Q.conj.get((k, j))
        if base is None:
            base = [0] * m
            base[k] = 1
        ex = layer.expr[col[t] - m]
        if t in candidates and sign < 0:
            ex = layer.normalize([-x for x in ex])
        out_conj[k, j] = list(base[:m]) + ex
    out_images = []
    for r, v in enumerate(Q.images):
        c = col.get(("epi", r))
        out_images.append(mapped(v, c) if c is not None else list(v) + [0] * new)
    for s, o in enumerate(layer.orders):
        if o:
            out_powers[m + s] = [0] * m + layer.power.get(s, [0] * new)

    names = list(Q.names)
    words = list(Q.gen_words)
    defs = list(Q.definitions)
    for t_idx in layer.survivors:
        _, k, j = tails[t_idx]
        if i == 2:
            names.append(f"[{Q.names[j]},{Q.names[k]}]")
            words.append(commutator(Q.gen_words[j], Q.gen_words[k]))
        else:
            names.append(f"[{Q.names[k]},{Q.names[j]}]")
            words.append(commutator(Q.gen_words[k], Q.gen_words[j]))
        defs.append(("conj", k, j))
    weights = w + [i] * new
    orders = Q.orders + layer.orders
    _refresh(names, weights, orders, out_powers, out_conj, _flipped_definitions(defs, weights))
    return PcPresentation(
        names,
        weights,
        orders,
        out_powers,
        out_conj,
        source=Q.source,
        images=out_images,
        gen_words=words,
        definitions=defs,
    )


def _flipped_definitions(defs, weights=None):
    """``(k, j, y)`` for weight-2 generators ``y = [g_j, g_k]``."""
    if isinstance(defs, PcPresentation):
        defs, weights = defs.definitions, defs.weights
    return [(d[1], d[2], y) for y, d in enumerate(defs) if d[0] == "conj" and weights[y] == 2]


def _refresh(names, weights, orders, powers, conj, flipped):
    """Rewrite ``g_k^(g_j) = g_k y^-1`` with the current power relations.

    For finite ``y`` the normal form of ``y^-1`` depends on deeper layers, so a
    value fixed when ``y`` was created goes stale.  Computing ``g_k y^-1``
    only involves generators from ``y`` on, never the relation being rewritten.
    """
    if not flipped:
        return
    tmp = PcPresentation(names, weights, orders, powers, conj, check=False)
    for k, j, y in flipped:
        conj[k, j] = tmp._mul(tmp._unit(k), tmp._inv(tmp._unit(y)))


def _consistency_checks(C: PcPresentation, m: int):
    """Pairs of collections that must agree in a consistent presentation.

    Only the first ``m`` generators need testing: the tails are central and free.
    """
    unit = C._unit
    mul = C._mul
    orders = C.orders
    for a in range(m):
        ua = unit(a)
        for b in range(a):
            ub = unit(b)
            ab = mul(ua, ub)
            for c in range(b):
                uc = unit(c)
                yield mul(ab, uc), mul(ua, mul(ub, uc)), ("assoc", a, b, c)
    for a in range(m):
        ua = unit(a)
        if orders[a]:
            ma = orders[a]
            W = C.powers[a]
            yield mul(W, ua), mul(ua, W), ("power-self", a)
            for b in range(a):
                ub = unit(b)
                yield mul(W, ub), mul(unit(a, ma - 1), mul(ua, ub)), ("power-left", a, b)
        for b in range(a):
            ub = unit(b)
            if orders[b]:
                mb = orders[b]
                yield mul(mul(ua, unit(b, mb - 1)), ub), mul(ua, C.powers[b]), ("power-right", a, b)
            else:
                binv = unit(b, -1)
                yield mul(mul(ua, binv), ub), ua, ("inverse-right", a, b)
                yield mul(mul(ua, ub), binv), ua, ("inverse-right2", a, b)
            if not orders[a]:
                ainv = unit(a, -1)
                yield mul(ainv, mul(ua, ub)), ub, ("inverse-left", a, b)
                if not orders[b]:
                    binv = unit(b, -1)
                    yield mul(ainv, mul(ua, binv)), binv, ("inverse-both", a, b)


def nilpotent_quotient(P: NilPresentation) -> PcPresentation:
    """Consistent weighted pc presentation of ``<A | R> / gamma_{c+1}``."""
    Q = _first_layer(P)
    for i in range(2, P.class_bound + 1):
        if Q.n == 0:
            break
        nxt = _extend(Q, i)
        if nxt is Q:
            break
        Q = nxt
    return Q


def free_nilpotent(n: int, c: int, prefix: str = "x") -> PcPresentation:
    """The free nilpotent group ``N_{n,c}`` on ``x1 .. xn``."""
    return nilpotent_quotient(NilPresentation(Alphabet.standard(n, prefix), (), c))
