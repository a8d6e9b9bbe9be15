"""Subgroups of pc-presented nilpotent groups as echelonised generator sequences.

A sequence is kept with at most one element per leading pc position, each
with a positive leading exponent.  Sifting against it decides membership;
closing it under commutators and relative powers makes it a polycyclic
generating sequence of the subgroup it generates.
"""

from __future__ import annotations

from typing import Dict, Iterable, List, Optional

from .presentation import PcElement, PcPresentation

Vec = List[int]


def _depth(v: Vec) -> int:
    for p, x in enumerate(v):
        if x:
            return p
    return len(v)


def _ext_gcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class SubgroupSequence:
    def __init__(self, P: PcPresentation):
        self.P = P
        self.table: Dict[int, Vec] = {}

    def sift(self, v: Vec) -> Vec:
        """Reduce ``v`` against the table; identity means membership (once closed)."""
        P = self.P
        v = list(v)
        while True:
            p = _depth(v)
            t = self.table.get(p)
            if t is None:
                return v
            a, b = t[p], v[p]
            if b % a:
                return v
            q = b // a
            v = P._mul(P._pow(t, -q), v)

    def _lead_positive(self, v: Vec) -> Vec:
        p = _depth(v)
        if p < len(v) and not self.P.orders[p] and v[p] < 0:
            v = self.P._inv(v)
        return v

    def add(self, elements: Iterable[Vec]) -> None:
        P = self.P
        queue = [list(e) for e in elements]
        while queue:
            v = self._lead_positive(self.sift(queue.pop()))
            p = _depth(v)
            if p == P.n:
                continue
            t = self.table.get(p)
            if t is not None:
                # combine leading exponents by the extended gcd
                a, b = t[p], v[p]
                d, x, y = _ext_gcd(a, b)
                new = P._mul(P._pow(t, x), P._pow(v, y))
                new = self._lead_positive(new)
                d = new[p]
                queue.append(P._mul(P._pow(new, -(a // d)), t))
                queue.append(P._mul(P._pow(new, -(b // d)), v))
                v = new
            m = P.orders[p]
            if m and m % v[p]:
                e, x, _ = _ext_gcd(v[p], m)
                x %= m
                w = P._pow(v, x)
                queue.append(P._mul(P._pow(w, -(v[p] // e)), v))
                v = w
            self.table[p] = v
            if m:
                queue.append(P._pow(v, m // v[p]))
            for q, u in self.table.items():
                if q != p:
                    queue.append(P._mul(P._mul(P._inv(u), P._inv(v)), P._mul(u, v)))

    def elements(self) -> List[PcElement]:
        return [PcElement(tuple(self.table[p])) for p in sorted(self.table)]

    def contains(self, e) -> bool:
        return not any(self.sift(list(e)))

    def order(self) -> Optional[int]:
        out = 1
        for p, v in self.table.items():
            m = self.P.orders[p]
            if not m:
                return None
            out *= m // v[p]
        return out


def subgroup_sequence(P: PcPresentation, elements: Iterable[PcElement]) -> SubgroupSequence:
    S = SubgroupSequence(P)
    S.add(list(e) for e in elements)
    return S
