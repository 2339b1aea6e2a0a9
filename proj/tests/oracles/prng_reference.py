"""Reference PRNG, written from the README description only.

Prints the values frozen in tests/unit/test_generators.cpp.
"""

M = (1 << 64) - 1


def fnv1a64(text):
    h = 0xCBF29CE484222325
    for c in text.encode():
        h = ((h ^ c) * 0x100000001B3) & M
    return h


def splitmix64(state):
    state = (state + 0x9E3779B97F4A7C15) & M
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return state, z ^ (z >> 31)


def rotl(x, k):
    return ((x << k) | (x >> (64 - k))) & M


class Rng:
    def __init__(self, seed, stream=""):
        state = seed ^ fnv1a64(stream)
        self.s = []
        for _ in range(4):
            state, w = splitmix64(state)
            self.s.append(w)
        self.buf, self.left = 0, 0

    def next(self):
        s = self.s
        result = (rotl((s[1] * 5) & M, 7) * 9) & M
        t = (s[1] << 17) & M
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        return result

    def bit(self):
        if self.left == 0:
            self.buf, self.left = self.next(), 64
        b = self.buf & 1
        self.buf >>= 1
        self.left -= 1
        return b

    def below(self, b):
        if b <= 1:
            return 0
        threshold = (1 << 64) % b
        while True:
            x = self.next()
            if x >= threshold:
                return x % b


def random_tournament_rows(n, seed):
    rng = Rng(seed, "random_tournament")
    rows = [["0"] * n for _ in range(n)]
    for u in range(n):
        for v in range(u + 1, n):
            if rng.bit():
                rows[u][v] = "1"
            else:
                rows[v][u] = "1"
    return ["".join(r) for r in rows]


if __name__ == "__main__":
    r = Rng(0)
    print("next(seed 0):", [hex(r.next()) for _ in range(3)])
    r = Rng(12345, "stream")
    print("next(12345, stream):", [hex(r.next()) for _ in range(2)])
    r = Rng(7, "below")
    print("below(7, below, 10):", [r.below(10) for _ in range(8)])
    print("random_tournament(5, 42):", random_tournament_rows(5, 42))
