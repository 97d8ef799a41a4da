"""Reduced words in the free group over an alphabet of string symbols."""

from __future__ import annotations


class FreeGroupWord:
    """A reduced sequence of signed symbols; the empty sequence is the identity.

    The constructor reduces its argument, so products and inverses are always
    reduced; reduction by a single left-to-right stack pass is confluent.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        stack: list = []
        for sym, sign in letters:
            if sign not in (1, -1):
                raise ValueError(f"sign must be +1 or -1, got {sign!r}")
            if stack and stack[-1][0] == sym and stack[-1][1] == -sign:
                stack.pop()
            else:
                stack.append((sym, sign))
        self.letters = tuple(stack)

    @classmethod
    def embed(cls, word, sign: int = 1) -> "FreeGroupWord":
        """The image of a word, or of its inverse when sign is -1."""
        w = cls((sym, 1) for sym in word)
        return w if sign == 1 else w.inverse()

    def inverse(self) -> "FreeGroupWord":
        return FreeGroupWord((sym, -sign) for sym, sign in reversed(self.letters))

    def __mul__(self, other: "FreeGroupWord") -> "FreeGroupWord":
        return FreeGroupWord(self.letters + other.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __eq__(self, other):
        if not isinstance(other, FreeGroupWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        if not self.letters:
            return "FreeGroupWord(identity)"
        parts = [sym if sign == 1 else sym + "^-1" for sym, sign in self.letters]
        return f"FreeGroupWord({'.'.join(parts)})"


IDENTITY = FreeGroupWord()
