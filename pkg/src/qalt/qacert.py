"""Quasi-alternating certificates.

A certificate is a JSON-ready tree.  Node kinds:

``unknot``
    crossingless diagram with one loop.
``alternating``
    connected alternating diagram with nonzero determinant.
``rational``
    closure of at most two slot tangles (``N``) or of one slot tangle (``D``);
    such links are two-bridge, hence alternating.  The recipe is rebuilt and
    compared with the stored diagram.
``sum``
    diagram cut along two arcs into two certified summands.
``resolution``
    a crossing whose two smoothings are certified, with nonzero and additive
    determinants.
``tangle_replacement``
    Montesinos presentation whose designated slot holds a sign-uniform word;
    the child certifies the same presentation with that slot replaced by a
    single crossing of the same sign, quasi-alternating at that crossing.

Every node stores its diagram, so :func:`verify_certificate` can recompute
each claim without trusting :func:`certify`.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence, Union

from .conway import (MontesinosPresentation, RationalTangleWord, parse_montesinos,
                     parse_tangle_word, render_montesinos, render_word)
from .determinant import UnsupportedDiagram, compute_det, det_oracle, DEFAULT_ORACLE_BUDGET
from .diagram import (PlanarDiagram, build_montesinos, build_montesinos_indexed,
                      build_slot_closure, canonical_key, is_alternating, is_connected,
                      resolve, split_at_cut, two_edge_cuts)
from .tangle import (TangleFraction, crossing_count, is_alternating_word, slot_value,
                     uniform_words, word_sign)

DEFAULT_DEPTH = int(os.environ.get("QALT_DEPTH", "8"))


class CertificationError(RuntimeError):
    """A determinant check failed where the theorem guarantees success."""

    def __init__(self, message: str, dets: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.dets = dets


@dataclass(frozen=True)
class Unknown:
    reason: str

    def __bool__(self) -> bool:
        return False


@dataclass
class QACertificate:
    link: str
    method: str
    tree: dict
    presentation: Optional[str] = None
    family: Optional[dict] = None
    equivalence: Optional[dict] = None

    def __bool__(self) -> bool:
        return True

    def to_json(self) -> dict:
        return {
            "format": "qalt-certificate/1",
            "link": self.link,
            "method": self.method,
            "presentation": self.presentation,
            "family": self.family,
            "equivalence": self.equivalence,
            "tree": self.tree,
        }

    @classmethod
    def from_json(cls, data: dict) -> "QACertificate":
        return cls(data["link"], data["method"], data["tree"], data.get("presentation"),
                   data.get("family"), data.get("equivalence"))

    @property
    def det(self) -> int:
        return self.tree["det"]


# -- Theorem families ------------------------------------------------------------

FAMILY_SHAPES = {
    # family: (length of the first word, length of the negative word)
    "I": (2, 1),
    "II": (2, 2),
    "III": (3, 1),
    "R": (3, 3),          # the Remark family
}


@dataclass(frozen=True)
class FamilyMatch:
    family: str
    a: tuple[int, ...]
    r: RationalTangleWord
    c: tuple[int, ...]          # positive parameters of the negative slot
    permutation: tuple[int, int, int]
    mirrored: bool
    condition: str
    lhs: int
    rhs: int
    original: Optional[MontesinosPresentation] = None

    @property
    def presentation(self) -> MontesinosPresentation:
        return MontesinosPresentation((
            RationalTangleWord(self.a), self.r, RationalTangleWord(tuple(-x for x in self.c))))

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "a": list(self.a),
            "tangle": render_word(self.r),
            "c": list(self.c),
            "permutation": list(self.permutation),
            "mirrored": self.mirrored,
            "condition": self.condition,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }


def family_condition(family: str, a: Sequence[int], c: Sequence[int]) -> tuple[bool, str, int, int]:
    """Evaluate a family's inequality in integer form: (holds, text, lhs, rhs)."""
    if family == "I":
        (a1, a2), (n,) = a, c
        lhs = 1 + a1 * (a2 - n)
        return n >= 2 and lhs < 0, "1 + a1*(a2 - n) < 0", lhs, 0
    if family == "II":
        (a1, a2), (c1, c2) = a, c
        ok = a2 < c2 or (a2 == c2 and a1 > c1)
        return ok, "a2 < c2 or (a2 = c2 and a1 > c1)", a2 * 1000 + (0 if a2 < c2 else 1), c2
    if family == "III":
        (a1, a2, a3), (n,) = a, c
        return n >= 2 and a3 < n, "a3 < n", a3, n
    if family == "R":
        (a1, a2, a3), (c1, c2, c3) = a, c
        lhs = (1 + a1 * a2) * (c1 + c3 + c1 * c2 * c3)
        rhs = (1 + c1 * c2) * (a1 + a3 + a1 * a2 * a3)
        return lhs > rhs, "(1+a1a2)(c1+c3+c1c2c3) > (1+c1c2)(a1+a3+a1a2a3)", lhs, rhs
    raise ValueError(f"unknown family {family!r}")


def _positive_forms(value: TangleFraction, length: int | None = None) -> list[tuple[int, ...]]:
    out = []
    for w in uniform_words(value):
        if w.entries[0] > 0 and (length is None or len(w) == length):
            out.append(w.entries)
    return out


def match_family(p: MontesinosPresentation,
                 families: Sequence[str] = ("I", "II", "III", "R")) -> Optional[FamilyMatch]:
    """First family whose pattern and inequality fit some rotation, reflection or mirror of ``p``.

    Slots are compared by slot value, so ``21-`` is seen as ``(-3)`` and
    ``3-`` as ``(-2)(-1)``.
    """
    if len(p.tangles) != 3 or p.half_twists != 0:
        return None
    values = [slot_value(w) for w in p.tangles]
    for family in families:
        a_len, c_len = FAMILY_SHAPES[family]
        found = []
        for mirrored in (False, True):
            vals = [TangleFraction(-v.numerator, v.denominator) for v in values] if mirrored else values
            for perm in itertools.permutations(range(3)):
                va, vr, vc = (vals[i] for i in perm)
                r_forms = _positive_forms(vr)
                if not r_forms or sum(r_forms[0]) < 2:
                    continue
                neg = TangleFraction(-vc.numerator, vc.denominator)
                for a in _positive_forms(va, a_len):
                    for c in _positive_forms(neg, c_len):
                        ok, text, lhs, rhs = family_condition(family, a, c)
                        if ok:
                            found.append(FamilyMatch(family, a, RationalTangleWord(r_forms[0]), c,
                                                     perm, mirrored, text, lhs, rhs, p))
        if found:
            # independent of slot order, so rotations and reflections agree
            return min(found, key=lambda m: (m.mirrored, m.a, m.r.entries, m.c, m.permutation))
    return None


# -- certificate construction -----------------------------------------------------

def _node(kind: str, d: PlanarDiagram, det: int, **extra) -> dict:
    node = {"kind": kind, "det": det, "diagram": d.to_json()}
    node.update(extra)
    return node


@dataclass
class Certifier:
    """Definition-driven search with memoization on canonical diagram keys."""

    depth: int = DEFAULT_DEPTH
    budget: int = DEFAULT_ORACLE_BUDGET
    recipes: list[tuple[str, tuple[RationalTangleWord, ...]]] = field(default_factory=list)
    _memo: dict = field(default_factory=dict)
    _failed: dict = field(default_factory=dict)
    _recipe_keys: dict = field(default_factory=dict)

    def add_recipes(self, recipes):
        for kind, words in recipes:
            key = canonical_key(build_slot_closure(words, kind))
            self._recipe_keys.setdefault(key, (kind, tuple(words)))

    def det(self, d: PlanarDiagram) -> int:
        return compute_det(d, budget=self.budget)[0]

    def certify(self, d: PlanarDiagram, depth: int | None = None) -> Union[dict, Unknown]:
        depth = self.depth if depth is None else depth
        key = canonical_key(d)
        if key in self._memo:
            # nodes are checked against their own stored diagram, so a
            # relabelled copy of d certifies d as well
            return self._memo[key]
        if self._failed.get(key, -1) >= depth:
            return Unknown(f"no certificate within depth {depth}")
        result = self._certify(d, key, depth)
        if isinstance(result, Unknown):
            self._failed[key] = max(depth, self._failed.get(key, -1))
        else:
            self._memo[key] = result
        return result

    def _certify(self, d: PlanarDiagram, key, depth: int) -> Union[dict, Unknown]:
        if not d.crossings:
            if d.free_loops == 1:
                return _node("unknot", d, 1)
            return Unknown(f"unlink of {d.free_loops} components has determinant 0")
        if not is_connected(d):
            return Unknown("split diagram: determinant 0")
        value = self.det(d)
        if value == 0:
            return Unknown("determinant is 0, so no crossing can satisfy additivity")
        if is_alternating(d):
            return _node("alternating", d, value)
        if key in self._recipe_keys:
            kind, words = self._recipe_keys[key]
            return _node("rational", d, value, closure=kind, tangles=[render_word(w) for w in words])
        for x, y, _ in two_edge_cuts(d):
            left, right = split_at_cut(d, x, y)
            c1 = self.certify(left, depth)
            if isinstance(c1, Unknown):
                continue
            c2 = self.certify(right, depth)
            if isinstance(c2, Unknown):
                continue
            return _node("sum", d, value, cut=[x, y], parts=[c1, c2])
        if depth <= 0:
            return Unknown("depth budget exhausted")
        reasons = []
        for i in range(len(d.crossings)):
            node = self.resolution(d, i, value, depth)
            if isinstance(node, Unknown):
                reasons.append(node.reason)
                continue
            return node
        return Unknown(f"no quasi-alternating crossing found within depth {depth}")

    def resolution(self, d: PlanarDiagram, i: int, value: int | None, depth: int) -> Union[dict, Unknown]:
        value = self.det(d) if value is None else value
        pair = resolve(d, i)
        try:
            d0 = self.det(pair.zero)
            dinf = self.det(pair.infinity)
        except UnsupportedDiagram as exc:
            return Unknown(str(exc))
        if d0 == 0 or dinf == 0:
            return Unknown(f"crossing {i}: a resolution has determinant 0")
        if value != d0 + dinf:
            return Unknown(f"crossing {i}: det {value} != {d0} + {dinf}")
        c0 = self.certify(pair.zero, depth - 1)
        if isinstance(c0, Unknown):
            return c0
        cinf = self.certify(pair.infinity, depth - 1)
        if isinstance(cinf, Unknown):
            return cinf
        return _node("resolution", d, value, crossing=i, det_zero=d0, det_infinity=dinf,
                     zero=c0, infinity=cinf)


def _cyclic_rest(words: Sequence[RationalTangleWord], slot: int) -> list[RationalTangleWord]:
    m = len(words)
    return [words[(slot + k) % m] for k in range(1, m)]


def _slot_recipes(words: Sequence[RationalTangleWord], slot: int):
    rest = _cyclic_rest(words, slot)
    recipes = [("D", (w,)) for w in rest]
    if len(rest) <= 2:
        recipes.append(("N", tuple(rest)))
    return recipes


def _replacement(p: MontesinosPresentation, slot: int, certifier: Certifier) -> Union[dict, Unknown]:
    """Certify the hatted link at the slot crossing and wrap it in a replacement node."""
    r = p.tangles[slot]
    sign = word_sign(r)
    if sign == 0:
        raise ValueError(f"slot word {render_word(r)} is not alternating; replacement needs an alternating tangle")
    hatted = p.replace(slot, RationalTangleWord((sign,)))
    md = build_montesinos_indexed(hatted)
    crossing = md.slot_crossings[slot][0]
    certifier.add_recipes(_slot_recipes(hatted.tangles, slot))
    node = certifier.resolution(md.diagram, crossing, None, certifier.depth)
    if isinstance(node, Unknown):
        return node
    d = build_montesinos(p)
    return _node("tangle_replacement", d, certifier.det(d) if len(d.crossings) <= certifier.budget else node["det"],
                 presentation=render_montesinos(p), slot=slot, word=render_word(r), hatted=node)


def certify_family(m: FamilyMatch, *, link: str | None = None, depth: int = DEFAULT_DEPTH, budget: int = DEFAULT_ORACLE_BUDGET) -> QACertificate:
    p = m.presentation
    certifier = Certifier(depth=depth, budget=budget)
    hatted = p.replace(1, RationalTangleWord((1,)))
    md = build_montesinos_indexed(hatted)
    pair = resolve(md.diagram, md.slot_crossings[1][0])
    dets = (certifier.det(md.diagram), certifier.det(pair.zero), certifier.det(pair.infinity))
    if dets[0] != dets[1] + dets[2] or dets[1] <= 0 or dets[2] <= 0:
        raise CertificationError(f"family {m.family} additivity failed: {dets}", dets)
    node = _replacement(p, 1, certifier)
    if isinstance(node, Unknown):
        raise CertificationError(f"family {m.family} resolutions not certified: {node.reason}", dets)
    original = m.original or p
    perm = m.permutation if m.original else (0, 1, 2)
    return QACertificate(
        link=link or render_montesinos(original),
        method="family",
        tree=node,
        presentation=render_montesinos(original),
        family=m.to_json(),
        equivalence={"original": render_montesinos(original), "matched": render_montesinos(p),
                     "permutation": list(perm), "mirrored": m.mirrored and m.original is not None},
    )


def certify_designated(p: MontesinosPresentation, slot: int, *, link: str | None = None,
                       depth: int = DEFAULT_DEPTH, budget: int = DEFAULT_ORACLE_BUDGET) -> Union[QACertificate, Unknown]:
    if not 0 <= slot < len(p.tangles):
        raise IndexError(f"slot {slot} out of range")
    r = p.tangles[slot]
    if not is_alternating_word(r):
        raise ValueError(f"designated tangle {render_word(r)} is not alternating")
    if crossing_count(r) < 2:
        raise ValueError(f"designated tangle {render_word(r)} has fewer than two crossings")
    certifier = Certifier(depth=depth, budget=budget)
    node = _replacement(p, slot, certifier)
    if isinstance(node, Unknown):
        return node
    return QACertificate(link=link or render_montesinos(p, slot), method="designated", tree=node,
                         presentation=render_montesinos(p, slot))


def certify(target: Union[PlanarDiagram, MontesinosPresentation], *, link: str | None = None,
            depth: int = DEFAULT_DEPTH, budget: int = DEFAULT_ORACLE_BUDGET) -> Union[QACertificate, Unknown]:
    """Certify a diagram or presentation; returns :class:`Unknown` rather than a negative."""
    if isinstance(target, MontesinosPresentation):
        m = match_family(target)
        if m is not None:
            return certify_family(m, link=link, depth=depth, budget=budget)
        for slot, w in enumerate(target.tangles):
            if is_alternating_word(w) and crossing_count(w) >= 2:
                result = certify_designated(target, slot, link=link, depth=depth, budget=budget)
                if result:
                    return result
        d = build_montesinos(target)
        name = link or render_montesinos(target)
        presentation = render_montesinos(target)
    else:
        d = target
        name = link or "diagram"
        presentation = None
    certifier = Certifier(depth=depth, budget=budget)
    node = certifier.certify(d)
    if isinstance(node, Unknown):
        return node
    return QACertificate(link=name, method="generic", tree=node, presentation=presentation)


# -- verification -----------------------------------------------------------------

@dataclass(frozen=True)
class Verification:
    ok: bool
    path: str = ""
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


class _Reject(Exception):
    def __init__(self, path, reason):
        super().__init__(reason)
        self.path = path
        self.reason = reason


def verify_certificate(cert: Union[QACertificate, dict], *, budget: int = DEFAULT_ORACLE_BUDGET) -> Verification:
    """Recompute every claim in the certificate."""
    data = cert.to_json() if isinstance(cert, QACertificate) else cert
    try:
        _Verifier(budget).check(data)
    except _Reject as rej:
        return Verification(False, rej.path, rej.reason)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        return Verification(False, "", f"malformed certificate: {exc!r}")
    return Verification(True)


class _Verifier:
    def __init__(self, budget: int):
        self.budget = budget

    def det(self, d: PlanarDiagram) -> int:
        if len(d.crossings) <= self.budget:
            return det_oracle(d, self.budget)
        return compute_det(d, budget=self.budget)[0]

    def check(self, data: dict):
        tree = data["tree"]
        self.node(tree, "tree")
        family = data.get("family")
        equivalence = data.get("equivalence")
        if data.get("method") == "family":
            if not family or not equivalence:
                raise _Reject("", "family certificate without family record")
            self.family(family, equivalence, tree)
        elif equivalence:
            raise _Reject("equivalence", "unexpected equivalence record")
        if data.get("presentation") and tree["kind"] != "tangle_replacement":
            p = parse_montesinos(data["presentation"])
            if _diagram(tree) != build_montesinos(p):
                raise _Reject("tree", "root diagram is not the presentation's diagram")

    def family(self, family: dict, eq: dict, tree: dict):
        a, c = tuple(family["a"]), tuple(family["c"])
        if any(x < 1 for x in a + c):
            raise _Reject("family", "family parameters must be positive")
        kind = family["family"]
        a_len, c_len = FAMILY_SHAPES[kind]
        if len(a) != a_len or len(c) != c_len:
            raise _Reject("family", "parameter shape does not fit the family")
        ok, *_ = family_condition(kind, a, c)
        if not ok:
            raise _Reject("family", f"family {kind} inequality fails for a={a}, c={c}")
        r = parse_tangle_word(family["tangle"])
        if word_sign(r) != 1 or crossing_count(r) < 2:
            raise _Reject("family", "R must be a positive tangle with at least two crossings")
        matched = MontesinosPresentation((RationalTangleWord(a), r, RationalTangleWord(tuple(-x for x in c))))
        if render_montesinos(matched) != eq["matched"]:
            raise _Reject("equivalence", "matched presentation disagrees with family parameters")
        if tree["kind"] != "tangle_replacement" or tree["presentation"] != eq["matched"] or tree["slot"] != 1:
            raise _Reject("tree", "family certificate must replace the R slot of the matched presentation")
        original = parse_montesinos(eq["original"])
        perm = eq["permutation"]
        if sorted(perm) != [0, 1, 2] or len(original.tangles) != 3:
            raise _Reject("equivalence", "bad permutation")
        sign = -1 if eq["mirrored"] else 1
        for k, i in enumerate(perm):
            v = slot_value(original.tangles[i])
            if TangleFraction(sign * v.numerator, v.denominator) != slot_value(matched.tangles[k]):
                raise _Reject("equivalence", f"slot {i} of the original does not match slot {k}")

    def node(self, node: dict, path: str):
        kind = node["kind"]
        d = _diagram(node)
        handler = getattr(self, f"_{kind}", None)
        if handler is None:
            raise _Reject(path, f"unknown node kind {kind!r}")
        handler(node, d, path)

    def _expect_det(self, node, d, path, *, positive=True):
        value = self.det(d)
        if value != node["det"]:
            raise _Reject(path, f"recorded det {node['det']} but recomputed {value}")
        if positive and value < 1:
            raise _Reject(path, "determinant must be nonzero")
        return value

    def _unknot(self, node, d, path):
        if d.crossings or d.free_loops != 1 or node["det"] != 1:
            raise _Reject(path, "not the crossingless unknot")

    def _alternating(self, node, d, path):
        if not is_connected(d):
            raise _Reject(path, "alternating leaf must be a connected diagram")
        if not is_alternating(d):
            raise _Reject(path, "diagram is not alternating")
        self._expect_det(node, d, path)

    def _rational(self, node, d, path):
        kind = node["closure"]
        words = [parse_tangle_word(w) for w in node["tangles"]]
        if kind == "N" and not 1 <= len(words) <= 2:
            raise _Reject(path, "numerator closure leaf needs one or two tangles")
        if kind == "D" and len(words) != 1:
            raise _Reject(path, "denominator closure leaf needs one tangle")
        if canonical_key(build_slot_closure(words, kind)) != canonical_key(d):
            raise _Reject(path, "diagram is not the stated rational closure")
        self._expect_det(node, d, path)

    def _sum(self, node, d, path):
        x, y = node["cut"]
        left, right = split_at_cut(d, x, y)
        parts = node["parts"]
        if len(parts) != 2:
            raise _Reject(path, "sum node needs two parts")
        for k, (piece, child) in enumerate(zip((left, right), parts)):
            if canonical_key(piece) != canonical_key(_diagram(child)):
                raise _Reject(f"{path}/parts[{k}]", "summand does not match the cut")
            self.node(child, f"{path}/parts[{k}]")
        value = self._expect_det(node, d, path)
        if value != parts[0]["det"] * parts[1]["det"]:
            raise _Reject(path, "determinant is not multiplicative over the sum")

    def _resolution(self, node, d, path):
        i = node["crossing"]
        pair = resolve(d, i)
        for name, child_d in (("zero", pair.zero), ("infinity", pair.infinity)):
            child = node[name]
            if canonical_key(_diagram(child)) != canonical_key(child_d):
                raise _Reject(f"{path}/{name}", f"not the {name} resolution of crossing {i}")
        value = self._expect_det(node, d, path)
        d0, dinf = self.det(pair.zero), self.det(pair.infinity)
        if (d0, dinf) != (node["det_zero"], node["det_infinity"]):
            raise _Reject(path, f"recorded resolution dets {(node['det_zero'], node['det_infinity'])}, recomputed {(d0, dinf)}")
        if d0 == 0 or dinf == 0:
            raise _Reject(path, "a resolution has determinant 0")
        if value != d0 + dinf:
            raise _Reject(path, f"det {value} != {d0} + {dinf}")
        if node["zero"]["det"] != d0 or node["infinity"]["det"] != dinf:
            raise _Reject(path, "child determinant fields disagree with the resolution dets")
        self.node(node["zero"], f"{path}/zero")
        self.node(node["infinity"], f"{path}/infinity")

    def _tangle_replacement(self, node, d, path):
        p = parse_montesinos(node["presentation"])
        slot = node["slot"]
        r = p.tangles[slot]
        if render_word(r) != node["word"]:
            raise _Reject(path, "recorded word is not the slot's word")
        sign = word_sign(r)
        if sign == 0:
            raise _Reject(path, "inserted tangle is not alternating")
        if d != build_montesinos(p):
            raise _Reject(path, "diagram is not the presentation's diagram")
        hatted = build_montesinos_indexed(p.replace(slot, RationalTangleWord((sign,))))
        child = node["hatted"]
        if child["kind"] != "resolution":
            raise _Reject(f"{path}/hatted", "hatted link must be resolved at the replaced crossing")
        if _diagram(child) != hatted.diagram or child["crossing"] != hatted.slot_crossings[slot][0]:
            raise _Reject(f"{path}/hatted", "hatted diagram or crossing does not match the slot")
        self.node(child, f"{path}/hatted")
        if len(d.crossings) <= self.budget:
            self._expect_det(node, d, path)


def _diagram(node: dict) -> PlanarDiagram:
    return PlanarDiagram.from_json(node["diagram"])
