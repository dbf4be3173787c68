"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package's kernels or word classes: words are
lists of (name, sign) pairs and every algorithm is the textbook one.
"""
from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction


def tokens(text: str) -> list[tuple[str, int]]:
    out = []
    for tok in text.split():
        name, _, exp = tok.partition("^")
        e = int(exp) if exp else 1
        out.extend([(name, 1 if e > 0 else -1)] * abs(e))
    return out


def stack_reduce(letters) -> list[tuple[str, int]]:
    stack: list[tuple[str, int]] = []
    for name, sign in letters:
        if stack and stack[-1] == (name, -sign):
            stack.pop()
        else:
            stack.append((name, sign))
    return stack


def inverse(letters) -> list[tuple[str, int]]:
    return [(n, -s) for n, s in reversed(letters)]


def to_text(letters) -> str:
    """Canonical serialization, written out independently."""
    out = []
    for name, grp in itertools.groupby(letters, key=lambda x: x):
        n = len(list(grp))
        e = n * name[1]
        out.append(name[0] if e == 1 else f"{name[0]}^{e}")
    return " ".join(out)


def apply_map(images: dict, letters) -> list[tuple[str, int]]:
    out = []
    for name, sign in letters:
        img = images[name]
        out.extend(img if sign > 0 else inverse(img))
    return stack_reduce(out)


def search_inverse_images(images: dict, max_len: int = 4) -> dict:
    """theta^-1 of each generator, by brute search over short words."""
    names = list(images)
    alphabet = [(n, s) for n in names for s in (1, -1)]
    want = {n: [(n, 1)] for n in names}
    found: dict = {}
    for length in range(1, max_len + 1):
        for word in itertools.product(alphabet, repeat=length):
            if stack_reduce(word) != list(word):
                continue
            img = apply_map(images, word)
            for n in names:
                if n not in found and img == want[n]:
                    found[n] = list(word)
        if len(found) == len(names):
            return found
    raise ValueError(f"no preimage of length <= {max_len} for {set(names) - set(found)}")


class ShuffleRewriter:
    """Normal forms in F x|_theta Z by literally applying
    t x = theta^-1(x) t and t^-1 x = theta(x) t^-1 until every t is on
    the right."""

    def __init__(self, images: dict, stable: str = "t", max_len: int = 4):
        self.fwd = images
        self.inv = search_inverse_images(images, max_len)
        self.t = stable

    def normal_form(self, letters) -> tuple[str, int]:
        word = list(letters)
        t = self.t
        changed = True
        while changed:
            changed = False
            for i in range(len(word) - 1):
                (a, sa), (b, sb) = word[i], word[i + 1]
                if a == t and b != t:
                    table = self.inv if sa > 0 else self.fwd
                    img = table[b] if sb > 0 else inverse(table[b])
                    word[i:i + 2] = img + [(t, sa)]
                    changed = True
                    break
        fiber = stack_reduce([x for x in word if x[0] != t])
        m = sum(s for n, s in word if n == t)
        return to_text(fiber), m

    def format(self, letters) -> str:
        fiber, m = self.normal_form(letters)
        return f"{fiber or 'e'} | {m}"


G2_IMAGES = {"a1": [("a1", 1)], "a2": [("a2", 1), ("a1", 1)]}


def brute_delta(dist, points) -> Fraction:
    """Max four-point defect: half of (largest - middle) pair sum."""
    best = Fraction(0)
    for a, b, c, d in itertools.combinations(points, 4):
        sums = sorted([dist(a, b) + dist(c, d), dist(a, c) + dist(b, d),
                       dist(a, d) + dist(b, c)])
        best = max(best, Fraction(sums[2] - sums[1], 2))
    return best


def free_ball(names, radius: int) -> list[tuple]:
    out = [()]
    frontier = [()]
    alphabet = [(n, s) for n in names for s in (1, -1)]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for x in alphabet:
                if w and w[-1] == (x[0], -x[1]):
                    continue
                nxt.append(w + (x,))
        out.extend(nxt)
        frontier = nxt
    return out


def bfs_path(names, u: tuple, v: tuple) -> list[tuple]:
    """Shortest path from u to v in the Cayley tree, by plain BFS."""
    alphabet = [(n, s) for n in names for s in (1, -1)]
    limit = len(u) + len(v)
    prev = {u: None}
    queue = deque([u])
    while queue:
        w = queue.popleft()
        if w == v:
            break
        for x in alphabet:
            nw = tuple(stack_reduce(list(w) + [x]))
            if nw not in prev and len(nw) <= limit:
                prev[nw] = w
                queue.append(nw)
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    return path[::-1]


def h2_length_by_search(fiber: str, exponent: int, max_len: int) -> int | None:
    """Shortest word in a1 t, a2 t equal to (fiber, exponent), by BFS over
    the free group on the basis with the shuffle rewriter.  Slow."""
    rw = ShuffleRewriter(G2_IMAGES)
    target = (fiber, exponent)
    basis = {"x1": [("a1", 1), ("t", 1)], "x2": [("a2", 1), ("t", 1)]}
    # free_ball lists words by increasing length
    for w in free_ball(["x1", "x2"], max_len):
        letters = []
        for n, s in w:
            letters.extend(basis[n] if s > 0 else inverse(basis[n]))
        if rw.normal_form(letters) == target:
            return len(w)
    return None
