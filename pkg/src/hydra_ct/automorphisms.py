"""Free-group homomorphisms given by generator images, and the hydra maps.

``hydra_phi(k)`` is the automorphism of F(a1..ak) fixing a1 and sending
``ai -> ai a(i-1)``.  ``hydra_theta(cfg)`` extends it to
F(a0..ak, b1..bl) with ``a0 -> u a1 v``, ``a1 -> a0`` and a configured
automorphism of F(b1..bl).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import yaml

from . import kernels
from .errors import AlphabetMismatch, BudgetExceeded, ConfigError, NotAnAutomorphism
from .words import Alphabet, Word

DEFAULT_BUDGET = 10**6


class GeneratorMap:
    """Homomorphism ``F(source) -> F(target)`` fixed by generator images."""

    def __init__(self, source: Alphabet, images, target: Alphabet | None = None):
        target = target or source
        if isinstance(images, Mapping):
            missing = set(source.names) - set(images)
            if missing:
                raise ConfigError(f"no image given for {sorted(missing)}")
            images = [images[name] for name in source.names]
        images = [target.parse(im) if isinstance(im, str) else im for im in images]
        if len(images) != len(source):
            raise ConfigError(f"expected {len(source)} images, got {len(images)}")
        for im in images:
            if im.alphabet != target:
                raise AlphabetMismatch(f"image {im!r} not over {target!r}")
        self.source = source
        self.target = target
        self.images = tuple(images)
        table = []
        for im in self.images:
            table.append(im.codes)
            table.append(kernels.invert_codes(im.codes))
        self.table = table

    def __call__(self, w: Word, budget: int = DEFAULT_BUDGET) -> Word:
        if w.alphabet != self.source:
            raise AlphabetMismatch(f"{w!r} is not over {self.source!r}")
        out = kernels.substitute(w.codes, self.table, budget)
        if out is None:
            raise BudgetExceeded("image length", _raw_size(w.codes, self.table), budget)
        return Word(self.target, out, reduced=True)

    def compose(self, other: "GeneratorMap") -> "GeneratorMap":
        """``self o other``: apply ``other`` first."""
        if other.target != self.source:
            raise AlphabetMismatch("cannot compose: target/source differ")
        return GeneratorMap(other.source, [self(im) for im in other.images], self.target)

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            im.codes == (2 * i,) for i, im in enumerate(self.images)
        )

    def __repr__(self) -> str:
        pairs = ", ".join(f"{n} -> {im}" for n, im in zip(self.source.names, self.images))
        return f"GeneratorMap({pairs})"


def _raw_size(codes, table) -> int:
    return sum(len(table[c]) for c in codes)


def identity_map(alphabet: Alphabet) -> GeneratorMap:
    return GeneratorMap(alphabet, [alphabet.generator(n) for n in alphabet.names])


def verify_automorphism(fwd: GeneratorMap, inv: GeneratorMap) -> bool:
    """True iff ``fwd o inv`` and ``inv o fwd`` both fix every generator."""
    if fwd.source != fwd.target or inv.source != inv.target or fwd.source != inv.source:
        raise AlphabetMismatch("automorphism check needs maps on one alphabet")
    return fwd.compose(inv).is_identity() and inv.compose(fwd).is_identity()


class Automorphism:
    """An automorphism with a verified inverse and a per-letter power cache.

    ``level(n)[code]`` is the reduced word (as codes) of theta^n applied
    to that letter.  Levels are built one step at a time from the nearest
    cached level, so concurrent callers may duplicate work but always
    store identical values.
    """

    def __init__(self, forward: GeneratorMap, inverse: GeneratorMap,
                 budget: int = DEFAULT_BUDGET, name: str = "theta"):
        if not verify_automorphism(forward, inverse):
            raise NotAnAutomorphism(f"{name}: supplied inverse does not invert {forward!r}")
        self.forward = forward
        self.inverse = inverse
        self.alphabet = forward.source
        self.budget = budget
        self.name = name
        self._levels: dict[int, list[tuple]] = {}
        self.clear_cache()

    def clear_cache(self) -> None:
        ident = [(c,) for c in range(2 * len(self.alphabet))]
        self._levels = {0: ident, 1: self.forward.table, -1: self.inverse.table}

    def level(self, n: int) -> list[tuple]:
        levels = self._levels
        table = levels.get(n)
        if table is not None:
            return table
        step = 1 if n > 0 else -1
        base = self.forward.table if n > 0 else self.inverse.table
        m = n
        while m not in levels:
            m -= step
        while m != n:
            prev = levels[m]
            m += step
            new = []
            for c, img in enumerate(base):
                out = kernels.substitute(img, prev, self.budget)
                if out is None:
                    letter = self.alphabet.names[c >> 1] + ("^-1" if c & 1 else "")
                    raise BudgetExceeded(
                        f"{self.name}^{m}({letter})", _raw_size(img, prev), self.budget
                    )
                new.append(out)
            levels[m] = new
        return levels[n]

    def power_image(self, code: int, n: int) -> tuple:
        return self.level(n)[code]

    def apply(self, w: Word) -> Word:
        return self.power_apply(1, w)

    def power_apply(self, n: int, w: Word) -> Word:
        if w.alphabet != self.alphabet:
            raise AlphabetMismatch(f"{w!r} is not over {self.alphabet!r}")
        if n == 0:
            return w
        table = self.level(n)
        out = kernels.substitute(w.codes, table, self.budget)
        if out is None:
            raise BudgetExceeded(
                f"{self.name}^{n} image", _raw_size(w.codes, table), self.budget
            )
        return Word(self.alphabet, out, reduced=True)

    def inverse_automorphism(self) -> "Automorphism":
        return Automorphism(self.inverse, self.forward, self.budget, f"{self.name}^-1")

    def __call__(self, w: Word) -> Word:
        return self.apply(w)

    def __repr__(self) -> str:
        return f"Automorphism({self.name}: {self.forward!r})"


def apply(A: Automorphism, w: Word) -> Word:
    return A.apply(w)


def power_apply(A: Automorphism, n: int, w: Word) -> Word:
    return A.power_apply(n, w)


def identity_automorphism(alphabet: Alphabet) -> Automorphism:
    ident = identity_map(alphabet)
    return Automorphism(ident, ident, name="id")


def _a_names(lo: int, k: int) -> list[str]:
    return [f"a{i}" for i in range(lo, k + 1)]


def hydra_phi(k: int, budget: int = DEFAULT_BUDGET) -> Automorphism:
    """phi on F(a1..ak): a1 -> a1, ai -> ai a(i-1)."""
    if k < 1:
        raise ConfigError(f"hydra needs k >= 1, got {k}")
    alpha = Alphabet(_a_names(1, k))
    fwd = [alpha.generator("a1")]
    inv = [alpha.generator("a1")]
    for i in range(2, k + 1):
        ai = alpha.generator(f"a{i}")
        fwd.append(ai * alpha.generator(f"a{i-1}"))
        # phi(ai) = ai a(i-1)  =>  phi^-1(ai) = ai phi^-1(a(i-1))^-1
        inv.append(ai * ~inv[i - 2])
    return Automorphism(GeneratorMap(alpha, fwd), GeneratorMap(alpha, inv), budget, "phi")


@dataclass
class HydraConfig:
    """Parameters of a hyperbolic hydra automorphism theta.

    ``u`` and ``v`` are words on the b-letters; ``theta_b`` and
    ``theta_b_inverse`` map each ``bj`` to a word on the b-letters.
    """

    k: int
    l: int
    u: str = ""
    v: str = ""
    theta_b: dict[str, str] = field(default_factory=dict)
    theta_b_inverse: dict[str, str] = field(default_factory=dict)

    @classmethod
    def from_mapping(cls, data: Mapping) -> "HydraConfig":
        try:
            k = int(data["k"])
            l = int(data["l"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"hydra config needs integer k and l ({exc})") from None
        theta_b = data.get("theta_b")
        theta_b_inverse = data.get("theta_b_inverse")
        if theta_b is None and theta_b_inverse is None:
            theta_b = theta_b_inverse = {f"b{j}": f"b{j}" for j in range(1, l + 1)}
        if not isinstance(theta_b, Mapping) or not isinstance(theta_b_inverse, Mapping):
            raise ConfigError("theta_b and theta_b_inverse must both be maps b_j -> word")
        return cls(
            k=k,
            l=l,
            u=str(data.get("u") or ""),
            v=str(data.get("v") or ""),
            theta_b={str(a): str(b or "") for a, b in theta_b.items()},
            theta_b_inverse={str(a): str(b or "") for a, b in theta_b_inverse.items()},
        )

    @classmethod
    def load(cls, path: str | Path) -> "HydraConfig":
        with open(path) as fh:
            data = yaml.safe_load(fh)
        if not isinstance(data, Mapping):
            raise ConfigError(f"{path}: expected a key/value document")
        return cls.from_mapping(data)

    def alphabet(self) -> Alphabet:
        return Alphabet(_a_names(0, self.k) + [f"b{j}" for j in range(1, self.l + 1)])


def _b_only(alpha: Alphabet, text: str, what: str) -> Word:
    w = alpha.parse(text)
    for c in w.codes:
        if not alpha.names[c >> 1].startswith("b"):
            raise ConfigError(f"{what} = {text!r} must be a word on b1..bl")
    return w


def hydra_theta(cfg: HydraConfig, budget: int = DEFAULT_BUDGET) -> Automorphism:
    """theta on F(a0..ak, b1..bl) from a HydraConfig."""
    if cfg.k < 1 or cfg.l < 1:
        raise ConfigError(f"hyperbolic hydra needs k >= 1 and l >= 1, got k={cfg.k}, l={cfg.l}")
    alpha = cfg.alphabet()
    bnames = [f"b{j}" for j in range(1, cfg.l + 1)]
    for which, table in (("theta_b", cfg.theta_b), ("theta_b_inverse", cfg.theta_b_inverse)):
        if sorted(table) != sorted(bnames):
            raise ConfigError(f"{which} must map exactly {bnames}, got {sorted(table)}")

    balpha = Alphabet(bnames)
    for which, table in (("theta_b", cfg.theta_b), ("theta_b_inverse", cfg.theta_b_inverse)):
        for name, img in table.items():
            _b_only(alpha, img, f"{which}[{name}]")
    bf = GeneratorMap(balpha, {n: cfg.theta_b[n] for n in bnames})
    bi = GeneratorMap(balpha, {n: cfg.theta_b_inverse[n] for n in bnames})
    if not verify_automorphism(bf, bi):
        raise NotAnAutomorphism("theta restricted to F(b1..bl) is not inverted by theta_b_inverse")

    u = _b_only(alpha, cfg.u, "u")
    v = _b_only(alpha, cfg.v, "v")
    binv_full = GeneratorMap(
        alpha,
        [alpha.generator(n) for n in _a_names(0, cfg.k)]
        + [alpha.parse(cfg.theta_b_inverse[n]) for n in bnames],
    )

    g = alpha.generator
    fwd = {"a0": u * g("a1") * v, "a1": g("a0")}
    inv = {"a0": g("a1"), "a1": ~binv_full(u) * g("a0") * ~binv_full(v)}
    for i in range(2, cfg.k + 1):
        fwd[f"a{i}"] = g(f"a{i}") * g(f"a{i-1}")
        inv[f"a{i}"] = g(f"a{i}") * ~inv[f"a{i-1}"]
    for n in bnames:
        fwd[n] = alpha.parse(cfg.theta_b[n])
        inv[n] = alpha.parse(cfg.theta_b_inverse[n])
    return Automorphism(GeneratorMap(alpha, fwd), GeneratorMap(alpha, inv), budget, "theta")
