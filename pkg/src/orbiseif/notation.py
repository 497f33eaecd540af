"""Symbols for closed 2-orbifolds and Seifert-fibered 3-orbifolds.

Two interchangeable notations are supported, with ASCII encodings 'o' for
the handle ring, '*' for a boundary (kaleidoscope) and 'x' for a crosscap:

* Conway style.  A base is a word such as ``*632``, ``22*``, ``o`` or
  ``xx``; a fibration wraps the word in parentheses and attaches local
  invariants as subscripts, e.g. ``(*_1 4_2 3_0 2_1)`` or ``(2_0 2_0 x)``,
  with an optional Euler-number suffix ``;e=p/q``.
* Standard style.  A base is spelled ``S2(4,4,2)``, ``D2(;6,3,2)``,
  ``D2(2,2;)`` ...; a fibration lists invariant blocks separated by
  semicolons, e.g. ``(S2(2,2,2,2);0/2,0/2,1/2,1/2;0)``.

Digits 1-9 are bare tokens in Conway words; indices or subscripts >= 10
must be parenthesized (``(12)_5``), which removes the "12 vs 1,2"
ambiguity.  Symbol equality is invariant under permutation of cones,
permutation of boundaries and rotation/reflection of every cyclic corner
sequence; the stored order is preserved so that aligned data (local
invariants, group presentations) never silently shuffles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotationError, SymbolError

SURFACE_NAMES = {
    (0, 0, 0): "S2",
    (1, 0, 0): "T2",
    (0, 1, 0): "RP2",
    (0, 2, 0): "Kb",
    (0, 0, 1): "D2",
    (0, 0, 2): "S1xI",
    (0, 1, 1): "Mb",
}
_NAME_TO_TPB = {
    "S2": (0, 0, 0),
    "T2": (1, 0, 0),
    "RP2": (0, 1, 0),
    "Kb": (0, 2, 0),
    "D2": (0, 0, 1),
    "S1xI": (0, 0, 2),
    "Mb": (0, 1, 1),
}


def _canonical_cycle(seq):
    """Best representative of a cyclic sequence up to rotation/reflection."""
    if not seq:
        return ()
    best = None
    for s in (tuple(seq), tuple(reversed(seq))):
        for k in range(len(s)):
            cand = s[k:] + s[:k]
            if best is None or cand > best:
                best = cand
    return best


@dataclass(frozen=True)
class LocalInvariant:
    """Cone/corner datum m/n; the fiber is singular iff gcd(m, n) > 1."""

    m: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise SymbolError(f"invariant denominator must be >= 1, got {self.n}")
        if self.m < 0:
            raise SymbolError(f"invariant numerator must be >= 0, got {self.m}")

    @property
    def value(self):
        return Fraction(self.m, self.n)

    @property
    def index(self):
        """Singularity index of the fiber (1 means regular)."""
        g = gcd(self.m, self.n)
        return g if g > 1 else 1

    def __repr__(self):
        return f"{self.m}/{self.n}"


class Orbifold2Symbol:
    """A closed 2-orbifold: handles, crosscaps, cones, corner cycles."""

    __slots__ = ("handles", "crosscaps", "cones", "boundaries", "_key")

    def __init__(self, handles=0, crosscaps=0, cones=(), boundaries=()):
        if handles < 0 or crosscaps < 0:
            raise SymbolError("handle and crosscap counts must be >= 0")
        cones = tuple(int(n) for n in cones)
        boundaries = tuple(tuple(int(n) for n in b) for b in boundaries)
        for n in cones:
            if n < 1:
                raise SymbolError(f"cone order must be >= 1, got {n}")
        for b in boundaries:
            for n in b:
                if n < 1:
                    raise SymbolError(f"corner order must be >= 1, got {n}")
        object.__setattr__(self, "handles", int(handles))
        object.__setattr__(self, "crosscaps", int(crosscaps))
        object.__setattr__(self, "cones", cones)
        object.__setattr__(self, "boundaries", boundaries)
        key = (
            self.handles,
            self.crosscaps,
            tuple(sorted(cones, reverse=True)),
            tuple(sorted((_canonical_cycle(b) for b in boundaries), reverse=True)),
        )
        object.__setattr__(self, "_key", key)

    def __setattr__(self, name, value):
        raise AttributeError("Orbifold2Symbol is immutable")

    def __eq__(self, other):
        return isinstance(other, Orbifold2Symbol) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"Orbifold2Symbol({print_base(self)!r})"

    @property
    def is_orientable(self):
        return self.crosscaps == 0 and not self.boundaries

    def canonical(self):
        """Same orbifold with cones sorted and corner cycles in canonical phase."""
        return Orbifold2Symbol(
            self.handles,
            self.crosscaps,
            tuple(sorted(self.cones, reverse=True)),
            tuple(sorted((_canonical_cycle(b) for b in self.boundaries), reverse=True)),
        )

    def erased(self):
        """Drop order-1 cones and corners (regular points in disguise)."""
        return Orbifold2Symbol(
            self.handles,
            self.crosscaps,
            tuple(n for n in self.cones if n > 1),
            tuple(tuple(n for n in b if n > 1) for b in self.boundaries),
        )


class SeifertSymbol:
    """A Seifert-fibered 3-orbifold: base plus aligned rational invariants.

    ``cone_invariants[k]`` decorates ``base.cones[k]``;
    ``corner_invariants[i][j]`` decorates corner ``base.boundaries[i][j]``;
    ``xi[i]`` is the {0,1} twist of the i-th boundary (None = unknown, only
    tolerated on input until completed); ``euler`` is the exact Euler number.
    """

    __slots__ = ("base", "cone_invariants", "corner_invariants", "xi", "euler", "_key")

    def __init__(self, base, cone_invariants=(), corner_invariants=(), xi=(), euler=0):
        cone_invariants = tuple(cone_invariants)
        corner_invariants = tuple(tuple(c) for c in corner_invariants)
        xi = tuple(xi)
        euler = Fraction(euler)
        if len(cone_invariants) != len(base.cones):
            raise SymbolError(
                f"{len(cone_invariants)} cone invariants for {len(base.cones)} cones"
            )
        for inv, n in zip(cone_invariants, base.cones):
            if inv.n != n:
                raise SymbolError(f"cone invariant {inv} does not match cone order {n}")
        if len(corner_invariants) != len(base.boundaries) or len(xi) != len(base.boundaries):
            raise SymbolError("boundary data does not match boundary count")
        for invs, corners in zip(corner_invariants, base.boundaries):
            if len(invs) != len(corners):
                raise SymbolError("corner invariant count does not match corner count")
            for inv, n in zip(invs, corners):
                if inv.n != n:
                    raise SymbolError(
                        f"corner invariant {inv} does not match corner order {n}"
                    )
        for x in xi:
            if x is not None and x not in (0, 1):
                raise SymbolError(f"boundary invariant must be 0 or 1, got {x}")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "cone_invariants", cone_invariants)
        object.__setattr__(self, "corner_invariants", corner_invariants)
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "euler", euler)
        cones = tuple(sorted(((inv.n, inv.m) for inv in cone_invariants), reverse=True))
        bds = tuple(
            sorted(
                (
                    (_canonical_cycle(tuple((inv.n, inv.m) for inv in invs)),
                     -1 if x is None else x)
                    for invs, x in zip(corner_invariants, xi)
                ),
                reverse=True,
            )
        )
        object.__setattr__(self, "_key", (base.handles, base.crosscaps, cones, bds, euler))

    def __setattr__(self, name, value):
        raise AttributeError("SeifertSymbol is immutable")

    def __eq__(self, other):
        return isinstance(other, SeifertSymbol) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SeifertSymbol({print_fibration(self)!r})"

    def canonical(self):
        """Reorder to the canonical form: cones (n, m)-descending, corner
        cycles in canonical rotation/reflection phase, boundaries sorted."""
        cones = sorted(self.cone_invariants, key=lambda v: (v.n, v.m), reverse=True)
        bds = []
        for invs, x in zip(self.corner_invariants, self.xi):
            cyc = _canonical_cycle(tuple((inv.n, inv.m) for inv in invs))
            bds.append((cyc, -1 if x is None else x))
        bds.sort(reverse=True)
        base = Orbifold2Symbol(
            self.base.handles,
            self.base.crosscaps,
            tuple(inv.n for inv in cones),
            tuple(tuple(n for n, _ in cyc) for cyc, _ in bds),
        )
        return SeifertSymbol(
            base,
            tuple(cones),
            tuple(tuple(LocalInvariant(m, n) for n, m in cyc) for cyc, _ in bds),
            tuple(None if x == -1 else x for _, x in bds),
            self.euler,
        )

    @property
    def has_unknown_xi(self):
        return any(x is None for x in self.xi)


# --------------------------------------------------------------------------
# Conway tokenizer
# --------------------------------------------------------------------------

def _read_int_token(text, i, what):
    """Read a bare digit or a parenthesized integer starting at i."""
    if i >= len(text):
        raise NotationError(f"expected {what}", i)
    c = text[i]
    if c.isdigit():
        return int(c), i + 1
    if c == "(":
        j = text.find(")", i)
        if j < 0:
            raise NotationError("unbalanced '(' in index", i)
        body = text[i + 1 : j]
        if not body.isdigit():
            raise NotationError(f"expected integer inside parentheses, got {body!r}", i)
        return int(body), j + 1
    raise NotationError(f"expected {what}, got {c!r}", i)


def _skip_ws(text, i):
    while i < len(text) and text[i] in " \t,":
        i += 1
    return i


def _parse_conway_word(text, base_offset=0, with_subscripts=False):
    """Parse the body of a Conway word (without the fibration parentheses).

    Returns (handles, crosscaps, cones, boundaries) where cones is a list of
    (order, m-or-None) and boundaries is a list of (xi-or-None, corner list).
    """
    handles = crosscaps = 0
    cones = []
    boundaries = []
    phase = 0  # 0: handles, 1: cones, 2: boundaries, 3: crosscaps
    i = _skip_ws(text, 0)
    while i < len(text):
        c = text[i]
        off = base_offset + i
        if c == "o":
            if phase > 0:
                raise NotationError("misplaced 'o' (handles come first)", off)
            handles += 1
            i += 1
        elif c.isdigit() or c == "(":
            n, i = _read_int_token(text, i, "singularity index")
            m = None
            if with_subscripts:
                if i < len(text) and text[i] == "_":
                    m, i = _read_int_token(text, i + 1, "subscript")
                else:
                    raise NotationError("missing '_' subscript on index", off)
            if phase <= 1:
                phase = 1
                cones.append((n, m))
            elif phase == 2:
                boundaries[-1][1].append((n, m))
            else:
                raise NotationError("digits after 'x' are not allowed", off)
        elif c == "*":
            if phase > 2:
                raise NotationError("misplaced '*' after 'x'", off)
            phase = 2
            i += 1
            x = None
            if with_subscripts and i < len(text) and text[i] == "_":
                x, i = _read_int_token(text, i + 1, "boundary invariant")
                if x not in (0, 1):
                    raise NotationError(f"boundary invariant must be 0 or 1, got {x}", off)
            boundaries.append((x, []))
        elif c == "x":
            phase = 3
            crosscaps += 1
            i += 1
        else:
            raise NotationError(f"unexpected character {c!r}", off)
        i = _skip_ws(text, i)
    return handles, crosscaps, cones, boundaries


# --------------------------------------------------------------------------
# Standard-style helpers
# --------------------------------------------------------------------------

def _surface_from_name(name, offset):
    t = p = b = 0
    for part in name.split("#"):
        part = part.strip()
        if "-" in part:
            part, _, suffix = part.partition("-")
            part = part.strip()
            suffix = suffix.strip()
            if not suffix.endswith("B2"):
                raise NotationError(f"bad boundary suffix {suffix!r}", offset)
            count = suffix[:-2]
            b += int(count) if count else 1
        if part not in _NAME_TO_TPB:
            raise NotationError(f"unknown surface name {part!r}", offset)
        dt, dp, db = _NAME_TO_TPB[part]
        t, p, b = t + dt, p + dp, b + db
    return t, p, b


def _surface_name(t, p, b):
    if (t, p, b) in SURFACE_NAMES:
        return SURFACE_NAMES[(t, p, b)]
    parts = ["T2"] * t + ["RP2"] * p
    name = "#".join(parts) if parts else "S2"
    if b:
        name += "-B2" if b == 1 else f"-{b}B2"
    return name


def _split_int_list(block, offset):
    block = block.strip()
    if not block:
        return []
    out = []
    for piece in block.split(","):
        piece = piece.strip()
        if not piece.isdigit():
            raise NotationError(f"expected integer, got {piece!r}", offset)
        out.append(int(piece))
    return out


def _parse_standard_base(text, offset=0):
    """Parse 'NAME' or 'NAME(cones;corners1;...;cornersb)'."""
    text = text.strip()
    head, sep, rest = text.partition("(")
    name = head.strip()
    t, p, b = _surface_from_name(name, offset)
    cones = []
    blocks = [""] * b
    if sep:
        if not rest.endswith(")"):
            raise NotationError("unbalanced '(' in standard base", offset)
        body = rest[:-1]
        parts = body.split(";")
        if len(parts) != 1 + b:
            raise NotationError(
                f"base {name} has {b} boundaries, expected {1 + b} blocks, got {len(parts)}",
                offset,
            )
        cones = _split_int_list(parts[0], offset)
        blocks = parts[1:]
    corner_lists = [_split_int_list(bl, offset) for bl in blocks]
    return t, p, cones, corner_lists


def _parse_fraction(text, offset):
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise NotationError(f"expected rational number, got {text!r}", offset) from None


# --------------------------------------------------------------------------
# Public parsing API
# --------------------------------------------------------------------------

def parse_base(text):
    """Parse a closed 2-orbifold in either notation.

    >>> parse_base("*632") == parse_base("D2(;6,3,2)")
    True
    >>> parse_base("o").handles
    1
    >>> parse_base("") == parse_base("S2")
    True
    """
    text = text.strip()
    if text and text[0].isalpha() and text[0].isupper():
        t, p, cones, corners = _parse_standard_base(text)
        sym = Orbifold2Symbol(t, p, cones, corners)
    else:
        h, p, cones, bds = _parse_conway_word(text)
        sym = Orbifold2Symbol(h, p, [n for n, _ in cones], [[n for n, _ in c] for _, c in bds])
    return sym.erased()


def _parse_conway_fibration(text):
    stripped = text.strip()
    if not stripped.startswith("("):
        raise NotationError("fibration must be enclosed in parentheses", 0)
    close = stripped.rfind(")")
    if close < 0:
        raise NotationError("missing closing ')'", len(stripped))
    body = stripped[1:close]
    tail = stripped[close + 1 :].strip()
    euler = Fraction(0)
    if tail:
        if not tail.startswith(";"):
            raise NotationError(f"unexpected trailing text {tail!r}", close + 1)
        tail = tail[1:].strip()
        if not tail.startswith("e="):
            raise NotationError("expected ';e=' Euler suffix", close + 1)
        euler = _parse_fraction(tail[2:], close + 1)
    h, p, cones, bds = _parse_conway_word(body, base_offset=1, with_subscripts=True)
    for n, m in cones:
        if m is None:
            raise NotationError("cone index without '_' subscript in fibration", 0)
    for x, corners in bds:
        for n, m in corners:
            if m is None:
                raise NotationError("corner index without '_' subscript in fibration", 0)
    base = Orbifold2Symbol(
        h, p, [n for n, _ in cones], [[n for n, _ in c] for x, c in bds]
    )
    return SeifertSymbol(
        base,
        [LocalInvariant(m, n) for n, m in cones],
        [[LocalInvariant(m, n) for n, m in c] for x, c in bds],
        [x for x, _ in bds],
        euler,
    )


def _split_fraction_list(block, offset):
    block = block.strip()
    if not block:
        return []
    out = []
    for piece in block.split(","):
        piece = piece.strip()
        if "/" not in piece:
            raise NotationError(f"invariant must be of the form m/n, got {piece!r}", offset)
        num, _, den = piece.partition("/")
        if not (num.strip().isdigit() and den.strip().isdigit()):
            raise NotationError(f"invariant must be of the form m/n, got {piece!r}", offset)
        out.append(LocalInvariant(int(num), int(den)))
    return out


def _parse_standard_fibration(text):
    stripped = text.strip()
    if not (stripped.startswith("(") and stripped.endswith(")")):
        raise NotationError("fibration must be enclosed in parentheses", 0)
    body = stripped[1:-1]
    # The base may itself contain ';' inside its parentheses: find its end.
    depth = 0
    cut = None
    for i, c in enumerate(body):
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
        elif c == ";" and depth == 0:
            cut = i
            break
    if cut is None:
        raise NotationError("standard fibration needs ';'-separated blocks", 0)
    base_text = body[:cut]
    t, p, cone_orders, corner_lists = _parse_standard_base(base_text)
    b = len(corner_lists)
    blocks = body[cut + 1 :].split(";")
    full = 1 + b + b + 1
    if len(blocks) == full:
        xi_blocks = blocks[1 + b : 1 + 2 * b]
    elif b == 1 and len(blocks) == full - 1:
        xi_blocks = [""]  # omitted xi on the unique boundary
    else:
        raise NotationError(
            f"expected {full} invariant blocks, got {len(blocks)}", cut
        )
    cone_invs = _split_fraction_list(blocks[0], cut)
    corner_invs = [_split_fraction_list(bl, cut) for bl in blocks[1 : 1 + b]]
    xi = []
    for bl in xi_blocks:
        bl = bl.strip()
        if not bl:
            xi.append(None)
        elif bl in ("0", "1"):
            xi.append(int(bl))
        else:
            raise NotationError(f"boundary invariant must be 0 or 1, got {bl!r}", cut)
    euler = _parse_fraction(blocks[-1], cut)
    if len(cone_invs) != len(cone_orders):
        raise NotationError("cone invariant count does not match base", cut)
    for inv, n in zip(cone_invs, cone_orders):
        if inv.n != n:
            raise NotationError(f"cone invariant {inv} does not match order {n}", cut)
    base = Orbifold2Symbol(t, p, cone_orders, corner_lists)
    return SeifertSymbol(base, cone_invs, corner_invs, xi, euler)


def parse_fibration(text):
    """Parse a Seifert symbol in either notation.

    Validity (the invariant relation) is *not* checked here; a missing
    boundary invariant is stored as None and can be filled in with
    ``seifert.complete_boundary_invariant``.
    """
    stripped = text.strip()
    inner = stripped[1:].lstrip() if stripped.startswith("(") else stripped
    if inner[:1].isalpha() and inner[:1].isupper():
        return _parse_standard_fibration(stripped)
    return _parse_conway_fibration(stripped)


# --------------------------------------------------------------------------
# Printing
# --------------------------------------------------------------------------

def _index_token(n):
    return str(n) if 1 <= n <= 9 else f"({n})"


def _subscript_token(m):
    return str(m) if 0 <= m <= 9 else f"({m})"


def print_base(sym, style="conway"):
    """Deterministic canonical spelling of a 2-orbifold symbol.

    >>> print_base(parse_base("D2(2,2;)"))
    '22*'
    >>> print_base(parse_base("*632"), style="standard")
    'D2(;6,3,2)'
    >>> print_base(parse_base("S2"))
    '1'
    """
    sym = sym.canonical()
    if style == "conway":
        parts = ["o" * sym.handles]
        parts += [_index_token(n) for n in sym.cones]
        for b in sym.boundaries:
            parts.append("*" + "".join(_index_token(n) for n in b))
        parts.append("x" * sym.crosscaps)
        word = "".join(parts)
        return word if word else "1"
    if style == "standard":
        name = _surface_name(sym.handles, sym.crosscaps, len(sym.boundaries))
        if not sym.cones and not any(sym.boundaries):
            return name
        blocks = [",".join(str(n) for n in sym.cones)]
        blocks += [",".join(str(n) for n in b) for b in sym.boundaries]
        return f"{name}({';'.join(blocks)})"
    raise ValueError(f"unknown style {style!r}")


def print_fibration(sym, style="conway"):
    """Deterministic canonical spelling of a Seifert symbol.

    The Euler number is printed only when nonzero (Conway style); a known
    boundary invariant is always printed, even on a unique boundary.

    >>> print_fibration(parse_fibration("(2_0 2_0 *_0)"))
    '(2_0 2_0 *_0)'
    >>> print_fibration(parse_fibration("(o)"))
    '(o)'
    """
    sym = sym.canonical()
    if style == "conway":
        tokens = ["o"] * sym.base.handles
        tokens += [f"{_index_token(v.n)}_{_subscript_token(v.m)}" for v in sym.cone_invariants]
        for invs, x in zip(sym.corner_invariants, sym.xi):
            star = "*" if x is None else f"*_{x}"
            tokens.append(star)
            tokens += [f"{_index_token(v.n)}_{_subscript_token(v.m)}" for v in invs]
        tokens += ["x"] * sym.base.crosscaps
        text = "(" + " ".join(tokens) + ")"
        if sym.euler:
            text += f";e={sym.euler}"
        return text
    if style == "standard":
        blocks = [",".join(f"{v.m}/{v.n}" for v in sym.cone_invariants)]
        blocks += [",".join(f"{v.m}/{v.n}" for v in invs) for invs in sym.corner_invariants]
        blocks += ["" if x is None else str(x) for x in sym.xi]
        blocks.append(str(sym.euler))
        return f"({print_base(sym.base, 'standard')};{';'.join(blocks)})"
    raise ValueError(f"unknown style {style!r}")


# --------------------------------------------------------------------------
# JSON serialization (field names match the type definitions)
# --------------------------------------------------------------------------

def base_to_json(sym):
    return {
        "handles": sym.handles,
        "crosscaps": sym.crosscaps,
        "cones": list(sym.cones),
        "boundaries": [list(b) for b in sym.boundaries],
    }


def base_from_json(data):
    return Orbifold2Symbol(
        data.get("handles", 0),
        data.get("crosscaps", 0),
        data.get("cones", ()),
        data.get("boundaries", ()),
    )


def fibration_to_json(sym):
    return {
        "base": base_to_json(sym.base),
        "cone_invariants": [{"m": v.m, "n": v.n} for v in sym.cone_invariants],
        "corner_invariants": [
            [{"m": v.m, "n": v.n} for v in invs] for invs in sym.corner_invariants
        ],
        "xi": list(sym.xi),
        "euler": str(sym.euler),
    }


def fibration_from_json(data):
    base = base_from_json(data["base"])
    return SeifertSymbol(
        base,
        [LocalInvariant(d["m"], d["n"]) for d in data.get("cone_invariants", ())],
        [
            [LocalInvariant(d["m"], d["n"]) for d in invs]
            for invs in data.get("corner_invariants", ())
        ],
        data.get("xi", ()),
        Fraction(data.get("euler", 0)),
    )
