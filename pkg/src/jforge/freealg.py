"""Free associative algebra with coefficient field, plus term rewriting.

Elements are dicts mapping words (tuples of generator names) to RatFunc
coefficients.  A RewriteSystem holds oriented rules lhs -> rhs where the lhs
is a single word and every rhs word is strictly smaller in the graded
lexicographic order induced by the generator sequence; that ordering is
compatible with concatenation, so rewriting terminates and normal forms are
well defined whenever the system is confluent.  Confluence itself is checked
by resolving all critical pairs (overlap and inclusion ambiguities).

A hard step budget (JFORGE_MAX_STEPS, default one million) backstops the
termination argument against misbuilt rule sets.
"""

from __future__ import annotations

import os

from .errors import DegreeOverflow, NonTerminating, OrientationFailure
from .field import RF_ONE, RF_ZERO, RatFunc
from .grammar import parse, serialize
from .report import CheckReport

Word = tuple
NCPoly = dict

DEFAULT_MAX_STEPS = 10 ** 6


def _max_steps_default() -> int:
    raw = os.environ.get("JFORGE_MAX_STEPS")
    if raw is None:
        return DEFAULT_MAX_STEPS
    try:
        value = int(raw)
    except ValueError:
        return DEFAULT_MAX_STEPS
    return value if value > 0 else DEFAULT_MAX_STEPS


# -- element helpers --------------------------------------------------------

def nc_zero() -> NCPoly:
    return {}


def nc_one() -> NCPoly:
    return {(): RF_ONE}


def nc_gen(name: str, coeff=None) -> NCPoly:
    return {(name,): RF_ONE if coeff is None else coeff}


def nc_word(word, coeff=None) -> NCPoly:
    return {tuple(word): RF_ONE if coeff is None else coeff}


def nc_is_zero(p: NCPoly) -> bool:
    return not p


def nc_add(a: NCPoly, b: NCPoly) -> NCPoly:
    out = dict(a)
    for w, c in b.items():
        acc = out.get(w, RF_ZERO) + c
        if acc.is_zero():
            out.pop(w, None)
        else:
            out[w] = acc
    return out


def nc_neg(a: NCPoly) -> NCPoly:
    return {w: -c for w, c in a.items()}


def nc_sub(a: NCPoly, b: NCPoly) -> NCPoly:
    return nc_add(a, nc_neg(b))


def nc_scale(a: NCPoly, c) -> NCPoly:
    c = c if isinstance(c, RatFunc) else RatFunc.const(c)
    if c.is_zero():
        return {}
    return {w: v * c for w, v in a.items()}


def nc_mul(a: NCPoly, b: NCPoly) -> NCPoly:
    out: NCPoly = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w = wa + wb
            acc = out.get(w, RF_ZERO) + ca * cb
            if acc.is_zero():
                out.pop(w, None)
            else:
                out[w] = acc
    return out


def nc_product(*factors) -> NCPoly:
    out = nc_one()
    for f in factors:
        out = nc_mul(out, f)
    return out


def nc_substitute_params(a: NCPoly, bindings: dict) -> NCPoly:
    out: NCPoly = {}
    for w, c in a.items():
        cc = c.substitute(bindings)
        if not cc.is_zero():
            out[w] = cc
    return out


def word_touches(word: Word, letters) -> bool:
    return any(g in letters for g in word)


def nc_str(p: NCPoly, generators: tuple = ()) -> str:
    """Deterministic text for diagnostics: terms sorted by descending word."""
    if not p:
        return "0"
    index = {g: i for i, g in enumerate(generators)}
    def key(w):
        return (len(w), tuple(index.get(g, -1) for g in w), w)
    parts = []
    for w in sorted(p, key=key, reverse=True):
        c = serialize(p[w])
        body = "*".join(w) if w else "1"
        if c == "1":
            parts.append(body)
        elif c == "-1":
            parts.append(f"-{body}")
        else:
            wrap = f"({c})" if ("+" in c or (" - " in c)) else c
            parts.append(f"{wrap}*{body}" if w else wrap)
    return " + ".join(parts).replace("+ -", "- ")


# -- rewriting ---------------------------------------------------------------

class RewriteRule:
    """One oriented rule: the word lhs rewrites to the combination rhs."""

    __slots__ = ("lhs", "rhs", "tag")

    def __init__(self, lhs, rhs: NCPoly, tag: str = ""):
        self.lhs = tuple(lhs)
        self.rhs = {tuple(w): c for w, c in rhs.items() if not c.is_zero()}
        self.tag = tag

    def __repr__(self):
        return f"RewriteRule({'*'.join(self.lhs)} -> {nc_str(self.rhs)})"


class RewriteSystem:
    """Oriented rules over an ordered generator alphabet.

    The generator sequence fixes the graded lexicographic word order used
    both for orientation checks and for choosing pivot words upstream.
    """

    def __init__(self, generators, max_steps: int = None, max_degree: int = None):
        self.generators = tuple(generators)
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        self.index = {g: i for i, g in enumerate(self.generators)}
        self.max_steps = max_steps or _max_steps_default()
        self.max_degree = max_degree
        self.rules: dict = {}
        self._lhs_lengths: tuple = ()
        self._cache: dict = {}

    # -- word order ------------------------------------------------------
    def word_key(self, word: Word) -> tuple:
        return (len(word), tuple(self.index[g] for g in word))

    def word_smaller(self, a: Word, b: Word) -> bool:
        return self.word_key(a) < self.word_key(b)

    def is_descending_pair(self, word: Word) -> bool:
        return len(word) == 2 and self.index[word[0]] > self.index[word[1]]

    # -- rule management ----------------------------------------------------
    def add_rule(self, rule: RewriteRule):
        for g in rule.lhs:
            if g not in self.index:
                raise OrientationFailure(f"unknown generator {g!r} in rule lhs")
        for w in rule.rhs:
            for g in w:
                if g not in self.index:
                    raise OrientationFailure(f"unknown generator {g!r} in rule rhs")
            if not self.word_smaller(w, rule.lhs):
                raise OrientationFailure(
                    f"rule {'*'.join(rule.lhs)} has non-decreasing term {'*'.join(w) or '1'}"
                )
        if rule.lhs in self.rules:
            raise OrientationFailure(f"duplicate rule for {'*'.join(rule.lhs)}")
        self.rules[rule.lhs] = rule
        self._lhs_lengths = tuple(sorted({len(l) for l in self.rules}, reverse=True))
        self._cache = {}

    def rule_list(self) -> list:
        return [self.rules[lhs] for lhs in sorted(self.rules, key=self.word_key)]

    # -- reduction ------------------------------------------------------------
    def find_redex(self, word: Word):
        """Leftmost, longest-match position: (pos, rule) or None."""
        n = len(word)
        for pos in range(n):
            for length in self._lhs_lengths:
                if pos + length > n:
                    continue
                rule = self.rules.get(word[pos:pos + length])
                if rule is not None:
                    return pos, rule
        return None

    def is_normal_word(self, word: Word) -> bool:
        return self.find_redex(word) is None

    def _nf_word(self, word: Word, budget: list) -> NCPoly:
        cached = self._cache.get(word)
        if cached is not None:
            return cached
        # rhs words are never longer than the lhs they replace, so this can
        # only trip on oversized input
        if self.max_degree is not None and len(word) > self.max_degree:
            raise DegreeOverflow(
                f"word of length {len(word)} exceeds degree bound {self.max_degree}"
            )
        hit = self.find_redex(word)
        if hit is None:
            result = {word: RF_ONE}
        else:
            pos, rule = hit
            head = word[:pos]
            tail = word[pos + len(rule.lhs):]
            acc: NCPoly = {}
            for rw, rc in rule.rhs.items():
                budget[0] -= 1
                if budget[0] < 0:
                    raise NonTerminating(
                        f"rewriting exceeded {self.max_steps} steps"
                    )
                piece = self._nf_word(head + rw + tail, budget)
                for w, c in piece.items():
                    total = acc.get(w, RF_ZERO) + c * rc
                    if total.is_zero():
                        acc.pop(w, None)
                    else:
                        acc[w] = total
            result = acc
        self._cache[word] = result
        return result

    def normal_form(self, poly: NCPoly, max_steps: int = None) -> NCPoly:
        budget = [max_steps or self.max_steps]
        out: NCPoly = {}
        for word, coeff in poly.items():
            if coeff.is_zero():
                continue
            piece = self._nf_word(tuple(word), budget)
            for w, c in piece.items():
                total = out.get(w, RF_ZERO) + c * coeff
                if total.is_zero():
                    out.pop(w, None)
                else:
                    out[w] = total
        return out

    def reduces_to_zero(self, poly: NCPoly) -> bool:
        return nc_is_zero(self.normal_form(poly))

    def apply_at(self, word: Word, pos: int, rule: RewriteRule) -> NCPoly:
        """One rewrite of rule at a known position; no further reduction."""
        if word[pos:pos + len(rule.lhs)] != rule.lhs:
            raise ValueError("rule does not match at position")
        head, tail = word[:pos], word[pos + len(rule.lhs):]
        return {head + rw + tail: rc for rw, rc in rule.rhs.items()}

    # -- confluence --------------------------------------------------------------
    def critical_pairs(self):
        """All overlap and inclusion ambiguities between rule lhs words.

        Yields (word, pos1, rule1, pos2, rule2) with pos1 <= pos2 and the two
        applications distinct.
        """
        rules = self.rule_list()
        for r1 in rules:
            l1 = r1.lhs
            for r2 in rules:
                l2 = r2.lhs
                # proper overlap: suffix of l1 equals prefix of l2
                top = min(len(l1), len(l2))
                for k in range(1, top):
                    if l1[len(l1) - k:] == l2[:k]:
                        word = l1 + l2[k:]
                        yield word, 0, r1, len(l1) - k, r2
                # inclusion: l2 strictly inside l1
                if len(l2) < len(l1):
                    for pos in range(len(l1) - len(l2) + 1):
                        if l1[pos:pos + len(l2)] == l2:
                            yield l1, 0, r1, pos, r2

    def confluence_report(self, max_degree: int = None) -> CheckReport:
        report = CheckReport("confluence")
        candidates = 0
        failures = []
        for word, p1, r1, p2, r2 in self.critical_pairs():
            if max_degree is not None and len(word) > max_degree:
                continue
            candidates += 1
            nf1 = self.normal_form(self.apply_at(word, p1, r1))
            nf2 = self.normal_form(self.apply_at(word, p2, r2))
            if nf1 != nf2:
                failures.append({
                    "word": list(word),
                    "first": nc_str(nf1, self.generators),
                    "second": nc_str(nf2, self.generators),
                })
        report.add(
            "critical-pairs-resolve",
            not failures,
            candidates=candidates,
            max_degree=max_degree,
            unresolved=failures[:5],
        )
        return report

    # -- quotient -------------------------------------------------------------
    def quotient(self, killed) -> "RewriteSystem":
        """Project onto the quotient by the ideal of words touching killed.

        Rules whose lhs touches a killed generator are dropped; killed words
        are erased from the remaining right-hand sides.
        """
        killed = set(killed)
        kept = tuple(g for g in self.generators if g not in killed)
        out = RewriteSystem(kept, self.max_steps, self.max_degree)
        for rule in self.rule_list():
            if word_touches(rule.lhs, killed):
                continue
            rhs = {w: c for w, c in rule.rhs.items() if not word_touches(w, killed)}
            out.add_rule(RewriteRule(rule.lhs, rhs, rule.tag))
        return out

    # -- serialization ----------------------------------------------------------
    def to_dict(self) -> dict:
        rules = []
        for rule in self.rule_list():
            rhs = [
                {"word": list(w), "coeff": serialize(c)}
                for w, c in sorted(rule.rhs.items(), key=lambda kv: self.word_key(kv[0]))
            ]
            rules.append({"lhs": list(rule.lhs), "rhs": rhs, "tag": rule.tag})
        return {"order": list(self.generators), "rules": rules}

    @classmethod
    def from_dict(cls, data: dict, max_steps: int = None) -> "RewriteSystem":
        out = cls(tuple(data["order"]), max_steps)
        for entry in data["rules"]:
            rhs = {
                tuple(t["word"]): parse(t["coeff"])
                for t in entry["rhs"]
            }
            out.add_rule(RewriteRule(tuple(entry["lhs"]), rhs, entry.get("tag", "")))
        return out


# -- functional forms of the main procedures ----------------------------------

def normal_form(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.normal_form(p)


def ideal_membership(p: NCPoly, rs: RewriteSystem) -> bool:
    """Whether p lies in the two-sided ideal the rules present.

    Sound whenever the system's critical pairs all resolve.
    """
    return rs.reduces_to_zero(p)


def confluence_check(rs: RewriteSystem, max_deg: int = None) -> CheckReport:
    return rs.confluence_report(max_deg)


# -- tensor square --------------------------------------------------------------

def t_zero() -> dict:
    return {}


def t_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, c in b.items():
        acc = out.get(key, RF_ZERO) + c
        if acc.is_zero():
            out.pop(key, None)
        else:
            out[key] = acc
    return out


def t_scale(a: dict, c) -> dict:
    c = c if isinstance(c, RatFunc) else RatFunc.const(c)
    if c.is_zero():
        return {}
    return {key: v * c for key, v in a.items()}


def t_simple(left: NCPoly, right: NCPoly) -> dict:
    """The elementary tensor of two algebra elements, expanded bilinearly."""
    out: dict = {}
    for wl, cl in left.items():
        for wr, cr in right.items():
            key = (wl, wr)
            acc = out.get(key, RF_ZERO) + cl * cr
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc
    return out


def t_mul(a: dict, b: dict) -> dict:
    """Componentwise product in the tensor square algebra."""
    out: dict = {}
    for (la, ra), ca in a.items():
        for (lb, rb), cb in b.items():
            key = (la + lb, ra + rb)
            acc = out.get(key, RF_ZERO) + ca * cb
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc
    return out


def t_is_zero(a: dict) -> bool:
    return not a


def tensor_normal_form(elem: dict, system: RewriteSystem) -> dict:
    """Normal form on both tensor legs, expanded bilinearly."""
    out: dict = {}
    for (wl, wr), c in elem.items():
        left = system.normal_form({tuple(wl): RF_ONE})
        right = system.normal_form({tuple(wr): RF_ONE})
        for ll, cl in left.items():
            for rr, cr in right.items():
                key = (ll, rr)
                acc = out.get(key, RF_ZERO) + c * cl * cr
                if acc.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = acc
    return out


def t_str(a: dict, generators: tuple = ()) -> str:
    if not a:
        return "0"
    parts = []
    for (wl, wr) in sorted(a, key=lambda k: (k[0], k[1])):
        c = serialize(a[(wl, wr)])
        left = "*".join(wl) if wl else "1"
        right = "*".join(wr) if wr else "1"
        parts.append(f"({c})·({left} (x) {right})")
    return " + ".join(parts)
