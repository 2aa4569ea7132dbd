"""Tree languages over a ranked signature with a single variable `*`:
substitution, bounded interpretation of regular expressions, the
fresh-wrapper transform and its inverse, and cross-checks tying bounded
interpretations back to the operational semantics.

Interpretations map each alphabet letter to a finite tree language and
extend to whole expressions: 0 to the empty language, 1 to {*}, sum to
union, product to substitution, star to the limit of the powers of
(1 + body). All computations here are bounded by tree size (node count,
`*` counts as 1); substitution never shrinks a tree, so every bounded
result is exactly the size-limited fragment of the unbounded language.
"""

from __future__ import annotations

import itertools
import random
import string
from functools import lru_cache
from types import MappingProxyType
from typing import Iterable, Mapping

from .relations import sim_leq
from .semantics import check, trans
from .syntax import Letter, One, Product, Regex, Star, Sum, Zero, letters

FRESH_SYMBOL = "f"


# --- trees --------------------------------------------------------------------


class Tree:
    """A first-order term with the single variable `*`. Immutable, with a
    cached structural hash."""

    __slots__ = ("_hash", "size", "var_count")

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("tree nodes are immutable")

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return render_tree(self)


class Var(Tree):
    """The variable `*` (exactly one per signature, shared as VAR)."""

    __slots__ = ()

    def __init__(self) -> None:
        object.__setattr__(self, "size", 1)
        object.__setattr__(self, "var_count", 1)
        object.__setattr__(self, "_hash", hash("tree:*"))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Var)

    __hash__ = Tree.__hash__


class App(Tree):
    """Application of a ranked symbol to child trees."""

    __slots__ = ("symbol", "children")
    __match_args__ = ("symbol", "children")

    def __init__(self, symbol: str, children: tuple[Tree, ...]) -> None:
        children = tuple(children)
        object.__setattr__(self, "symbol", symbol)
        object.__setattr__(self, "children", children)
        object.__setattr__(self, "size", 1 + sum(c.size for c in children))
        object.__setattr__(self, "var_count", sum(c.var_count for c in children))
        object.__setattr__(self, "_hash", hash(("tree:app", symbol, children)))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        return (
            isinstance(other, App)
            and self._hash == other._hash
            and self.symbol == other.symbol
            and self.children == other.children
        )

    __hash__ = Tree.__hash__


VAR = Var()

TreeLang = frozenset  # of Tree


def tree_key(t: Tree) -> tuple:
    """Total order on trees: by size, then symbol name, then children."""
    if isinstance(t, Var):
        return (1, "*")
    return (t.size, t.symbol, tuple(tree_key(c) for c in t.children))


@lru_cache(maxsize=1 << 15)
def render_tree(t: Tree) -> str:
    """S-expression form: `*`, `c`, `(g * (h c))`."""
    if isinstance(t, Var):
        return "*"
    if not t.children:
        return t.symbol
    return "(" + " ".join([t.symbol] + [render_tree(c) for c in t.children]) + ")"


def render_lang(lang: Iterable[Tree]) -> str:
    """Sorted S-expressions, one per line."""
    return "\n".join(render_tree(t) for t in sorted(lang, key=tree_key))


# --- signatures and interpretations --------------------------------------------


_SYMBOL_CHARS = frozenset(string.ascii_lowercase + string.digits + "_")


class Signature:
    """Ranked alphabet for trees. The unary symbol reserved for freshen()
    (FRESH_SYMBOL) can never be user-declared."""

    __slots__ = ("arities",)

    def __init__(self, arities: Mapping[str, int]) -> None:
        d = dict(arities)
        for sym, k in d.items():
            if not sym or not set(sym) <= _SYMBOL_CHARS or sym[0] not in string.ascii_lowercase:
                raise ValueError(f"bad symbol name {sym!r}")
            if not isinstance(k, int) or k < 0:
                raise ValueError(f"arity of {sym!r} must be a non-negative integer")
        if FRESH_SYMBOL in d:
            raise ValueError(f"symbol {FRESH_SYMBOL!r} is reserved")
        self.arities = MappingProxyType(d)

    def __contains__(self, sym: str) -> bool:
        return sym in self.arities

    def symbols(self) -> tuple[str, ...]:
        return tuple(sorted(self.arities))

    def _with_fresh(self) -> "Signature":
        out = object.__new__(Signature)
        d = dict(self.arities)
        d[FRESH_SYMBOL] = 1
        out.arities = MappingProxyType(d)
        return out


def conforms(t: Tree, sig: Signature) -> bool:
    """Does every application in t match the signature's arities?"""
    if isinstance(t, Var):
        return True
    arity = sig.arities.get(t.symbol)
    if arity is None or arity != len(t.children):
        return False
    return all(conforms(c, sig) for c in t.children)


class Interpretation:
    """A finite map from alphabet letters to finite tree languages over a
    shared signature."""

    __slots__ = ("signature", "letter_map")

    def __init__(self, signature: Signature, letter_map: Mapping[str, Iterable[Tree]]) -> None:
        self.signature = signature
        fixed = {}
        for letter, lang in letter_map.items():
            if len(letter) != 1 or letter not in string.ascii_lowercase:
                raise ValueError(f"letters are single lowercase characters, got {letter!r}")
            lang = frozenset(lang)
            for t in lang:
                if not conforms(t, signature):
                    raise ValueError(f"tree {render_tree(t)} does not conform to the signature")
            fixed[letter] = lang
        self.letter_map = MappingProxyType(fixed)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(sorted(self.letter_map))

    def lang(self, letter: str) -> TreeLang:
        try:
            return self.letter_map[letter]
        except KeyError:
            raise KeyError(f"interpretation does not cover letter {letter!r}") from None


# --- substitution ---------------------------------------------------------------


def substitute(t: Tree, lang: Iterable[Tree]) -> TreeLang:
    """All trees obtained from t by independently replacing each `*`
    occurrence with an element of lang (|lang|**n results up to collisions)."""
    lang = frozenset(lang)
    if isinstance(t, Var):
        return lang
    if t.var_count == 0:
        return frozenset((t,))
    per_child = [substitute(c, lang) for c in t.children]
    return frozenset(
        App(t.symbol, combo) for combo in itertools.product(*per_child)
    )


def apply_lang(outer: Iterable[Tree], inner: Iterable[Tree]) -> TreeLang:
    """Pointwise substitution image: union of substitute(t, inner)."""
    inner = frozenset(inner)
    out: set[Tree] = set()
    for t in outer:
        out |= substitute(t, inner)
    return frozenset(out)


def _replace_positional(t: Tree, picks: list[Tree], pos: list[int]) -> Tree:
    if isinstance(t, Var):
        out = picks[pos[0]]
        pos[0] += 1
        return out
    if t.var_count == 0:
        return t
    return App(t.symbol, tuple(_replace_positional(c, picks, pos) for c in t.children))


def _subst_bounded(t: Tree, lang: TreeLang, bound: int) -> set[Tree]:
    # size of a substitution result: t.size + sum(|pick| - 1); enumerate
    # only combinations staying within the bound
    slack = bound - t.size
    if slack < 0:
        return set()
    if t.var_count == 0:
        return {t}
    choices = sorted((s for s in lang if s.size - 1 <= slack), key=tree_key)
    out: set[Tree] = set()
    picks: list[Tree] = []

    def rec(i: int, used: int) -> None:
        if i == t.var_count:
            out.add(_replace_positional(t, picks, [0]))
            return
        for s in choices:
            grown = used + s.size - 1
            if grown > slack:
                break
            picks.append(s)
            rec(i + 1, grown)
            picks.pop()

    rec(0, 0)
    return out


def apply_lang_bounded(outer: Iterable[Tree], inner: TreeLang, bound: int) -> TreeLang:
    """Substitution image restricted to trees of size <= bound; exact
    because substitution never shrinks trees."""
    out: set[Tree] = set()
    for t in outer:
        out |= _subst_bounded(t, inner, bound)
    return frozenset(out)


# --- bounded interpretation -----------------------------------------------------


def interpret(interp: Interpretation, x: Regex, k: int) -> TreeLang:
    """Exactly the trees of size <= k in the interpretation of x."""
    if k < 1:
        raise ValueError("bound must be at least 1")
    memo: dict[Regex, TreeLang] = {}

    def go(e: Regex) -> TreeLang:
        got = memo.get(e)
        if got is not None:
            return got
        match e:
            case Zero():
                out: TreeLang = frozenset()
            case One():
                out = frozenset((VAR,))
            case Letter(s):
                out = frozenset(t for t in interp.lang(s) if t.size <= k)
            case Sum(l, r):
                out = go(l) | go(r)
            case Product(l, r):
                out = apply_lang_bounded(go(l), go(r), k)
            case Star(b):
                out = _star_fixpoint(go(b), k)
            case _:
                raise TypeError(f"not a regex: {e!r}")
        memo[e] = out
        return out

    return go(x)


def _star_fixpoint(base: TreeLang, k: int) -> TreeLang:
    u = frozenset((VAR,))
    while True:
        grown = frozenset(u | apply_lang_bounded(base, u, k))
        if grown == u:
            return u
        u = grown


def star_closure(interp: Interpretation, x: Regex, k: int) -> TreeLang:
    """Bounded star: least fixpoint of U -> {*} ∪ image of x's language on
    U, truncated at k. Equals interpret(interp, Star(x), k)."""
    if k < 1:
        raise ValueError("bound must be at least 1")
    return _star_fixpoint(interpret(interp, x, k), k)


# --- canned interpretations -----------------------------------------------------


def standard_interpretation(alphabet: Iterable[str]) -> Interpretation:
    """Each letter a maps to {a(*)} with a unary; trees are then words."""
    alphabet = tuple(alphabet)
    sig = Signature({a: 1 for a in alphabet})
    return Interpretation(sig, {a: frozenset((App(a, (VAR,)),)) for a in alphabet})


def random_interpretation(alphabet: Iterable[str], seed: int) -> Interpretation:
    """A deterministic random signature (at most 4 symbols, arities 0..3)
    and letter languages of 1..3 trees of size <= 4, possibly including `*`."""
    rng = random.Random(f"interpretation:{seed}")
    pool = ("g", "h", "p", "q")
    sig = Signature({pool[i]: rng.randint(0, 3) for i in range(rng.randint(1, 4))})

    def rand_tree(budget: int) -> Tree:
        fits = [sym for sym in sig.symbols() if 1 + sig.arities[sym] <= budget]
        pick = rng.choice(["*"] + fits)
        if pick == "*":
            return VAR
        arity = sig.arities[pick]
        remaining = budget - 1
        kids = []
        for i in range(arity):
            share = remaining - (arity - i - 1)
            used = rng.randint(1, share)
            kids.append(rand_tree(used))
            remaining -= kids[-1].size
        return App(pick, tuple(kids))

    letter_map = {
        a: frozenset(rand_tree(4) for _ in range(rng.randint(1, 3)))
        for a in sorted(set(alphabet))
    }
    return Interpretation(sig, letter_map)


# --- fresh-wrapper transform ------------------------------------------------------


def freshen(interp: Interpretation) -> Interpretation:
    """Wrap bare `*` in each letter language as f(*), so no letter maps to
    the bare variable; the signature gains f/1. Rejects interpretations
    already using f."""
    if FRESH_SYMBOL in interp.signature:
        raise ValueError(f"interpretation already uses the reserved symbol {FRESH_SYMBOL!r}")
    sig = interp.signature._with_fresh()
    wrapped = App(FRESH_SYMBOL, (VAR,))
    out = {}
    for a, lang in interp.letter_map.items():
        out[a] = (lang - {VAR}) | {wrapped} if VAR in lang else lang
    result = object.__new__(Interpretation)
    result.signature = sig
    result.letter_map = MappingProxyType(out)
    return result


def erase_f(lang: Iterable[Tree]) -> TreeLang:
    """Collapse every f(t) to t, recursively; the result is f-free."""

    def er(t: Tree) -> Tree:
        if isinstance(t, Var):
            return t
        if t.symbol == FRESH_SYMBOL:
            return er(t.children[0])
        return App(t.symbol, tuple(er(c) for c in t.children))

    return frozenset(er(t) for t in lang)


# --- external formats ---------------------------------------------------------------


def parse_tree(text: str, sig: Signature) -> Tree:
    """Parse one S-expression tree: `*`, `c` or `(c)`, `(g * (h c))`."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def fail(msg: str) -> ValueError:
        return ValueError(f"bad tree {text!r}: {msg}")

    def node() -> Tree:
        nonlocal pos
        if pos >= len(tokens):
            raise fail("unexpected end")
        tok = tokens[pos]
        pos += 1
        if tok == "*":
            return VAR
        if tok == ")":
            raise fail("unexpected ')'")
        if tok != "(":
            return _apply(tok, ())
        if pos >= len(tokens):
            raise fail("unexpected end")
        sym = tokens[pos]
        pos += 1
        if sym in ("(", ")", "*"):
            raise fail(f"expected a symbol after '(', got {sym!r}")
        kids = []
        while pos < len(tokens) and tokens[pos] != ")":
            kids.append(node())
        if pos >= len(tokens):
            raise fail("missing ')'")
        pos += 1
        return _apply(sym, tuple(kids))

    def _apply(sym: str, kids: tuple[Tree, ...]) -> Tree:
        arity = sig.arities.get(sym)
        if arity is None:
            raise fail(f"symbol {sym!r} is not in the signature")
        if arity != len(kids):
            raise fail(f"symbol {sym!r} has arity {arity}, got {len(kids)} children")
        return App(sym, kids)

    out = node()
    if pos != len(tokens):
        raise fail("trailing tokens")
    return out


def load_interpretation(text: str) -> Interpretation:
    """Parse the interpretation file format:

        sig: g/2, c/0
        a: (g * c), *
        b: c

    One `sig:` header declaring symbol/arity pairs, then one line per
    letter listing its trees. Blank lines and `#` comments are ignored.
    """
    sig: Signature | None = None
    letter_map: dict[str, frozenset[Tree]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue

        def fail(msg: str) -> ValueError:
            return ValueError(f"line {lineno}: {msg}")

        head, sep, rest = line.partition(":")
        if not sep:
            raise fail("expected 'sig:' or 'letter:'")
        head = head.strip()
        if head == "sig":
            if sig is not None:
                raise fail("duplicate sig header")
            arities = {}
            for part in filter(None, (p.strip() for p in rest.split(","))):
                sym, slash, arity = part.partition("/")
                if not slash or not arity.strip().isdigit():
                    raise fail(f"expected symbol/arity, got {part!r}")
                arities[sym.strip()] = int(arity.strip())
            try:
                sig = Signature(arities)
            except ValueError as e:
                raise fail(str(e)) from None
        else:
            if sig is None:
                raise fail("letter line before the sig header")
            if head in letter_map:
                raise fail(f"duplicate letter {head!r}")
            try:
                lang = frozenset(
                    parse_tree(part.strip(), sig)
                    for part in rest.split(",")
                    if part.strip()
                )
                letter_map[head] = lang
            except ValueError as e:
                raise fail(str(e)) from None
    if sig is None:
        raise ValueError("missing sig header")
    try:
        return Interpretation(sig, letter_map)
    except ValueError as e:
        raise ValueError(str(e)) from None


def dump_interpretation(interp: Interpretation) -> str:
    """Inverse of load_interpretation, deterministic."""
    lines = [
        "sig: " + ", ".join(f"{s}/{interp.signature.arities[s]}" for s in interp.signature.symbols())
    ]
    for a in interp.alphabet:
        trees = ", ".join(render_tree(t) for t in sorted(interp.lang(a), key=tree_key))
        lines.append(f"{a}: {trees}")
    return "\n".join(lines) + "\n"


# --- cross-checks ------------------------------------------------------------------


def int_normal_check(interp: Interpretation, x: Regex, k: int) -> bool:
    """Bounded head-normal form: the language of x equals the accepting
    contribution {*} plus, for each letter a and each a-successor z, the
    image of a's language applied to z's language, all truncated at k."""
    lhs = interpret(interp, x, k)
    rhs: set[Tree] = set()
    if check(x):
        rhs.add(VAR)
    for a in sorted(letters(x)):
        la = frozenset(t for t in interp.lang(a) if t.size <= k)
        for z in trans(x, a):
            rhs |= apply_lang_bounded(la, interpret(interp, z, k), k)
    return lhs == frozenset(rhs)


def respects_simulation_check(
    x: Regex, y: Regex, interp: Interpretation, k: int, *, cap: int = 10000
) -> bool:
    """Executable form of "interpretation respects simulation", bounded.

    If y simulates x, x's bounded language is contained in y's, both for
    the plain interpretation and for its freshened variant; with
    equivalence the bounded languages are equal. Vacuously true when the
    sides are unrelated.
    """
    if not sim_leq(x, y, cap=cap, witness=False).verdict:
        return True
    fresh = freshen(interp)
    ix, iy = interpret(interp, x, k), interpret(interp, y, k)
    jx, jy = interpret(fresh, x, k), interpret(fresh, y, k)
    if not (ix <= iy and jx <= jy):
        return False
    if sim_leq(y, x, cap=cap, witness=False).verdict:
        return ix == iy and jx == jy
    return True
