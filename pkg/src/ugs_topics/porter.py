"""Porter suffix-stripping stemmer, classic 1980 rule set.

Implemented in-repo so stemming is identical everywhere this package runs,
with no dependency on an external NLP toolkit. The rules follow the
published algorithm (steps 1a-5b, longest-suffix match per step, measure
and letter-class conditions as defined there), with one widespread
convention kept from the reference C implementation: words of one or two
letters are returned unchanged.

Within a step, the longest matching suffix decides which rule is tried;
if that rule's condition fails, the step applies nothing (shorter matches
are not retried).
"""

from __future__ import annotations

_VOWELS = frozenset("aeiou")


class _PorterBuffer:
    """Mutable word buffer with the measure/letter-class predicates.

    ``k`` is the index of the last letter; ``j`` marks the end of the stem
    after a suffix match. Conditions (m, *v*, *d, *o) read ``b[0..j]``.
    """

    def __init__(self, word: str):
        self.b = list(word)
        self.k = len(word) - 1
        self.j = 0

    def cons(self, i: int) -> bool:
        ch = self.b[i]
        if ch in _VOWELS:
            return False
        if ch == "y":
            return True if i == 0 else not self.cons(i - 1)
        return True

    def m(self) -> int:
        """Number of VC sequences in b[0..j], i.e. m in [C](VC)^m[V]."""
        n = 0
        i = 0
        while True:
            if i > self.j:
                return n
            if not self.cons(i):
                break
            i += 1
        i += 1
        while True:
            while True:
                if i > self.j:
                    return n
                if self.cons(i):
                    break
                i += 1
            i += 1
            n += 1
            while True:
                if i > self.j:
                    return n
                if not self.cons(i):
                    break
                i += 1
            i += 1

    def vowel_in_stem(self) -> bool:
        return any(not self.cons(i) for i in range(self.j + 1))

    def double_cons(self, i: int) -> bool:
        if i < 1:
            return False
        return self.b[i] == self.b[i - 1] and self.cons(i)

    def cvc(self, i: int) -> bool:
        """b[i-2..i] is consonant-vowel-consonant and b[i] not in w, x, y."""
        if i < 2 or not self.cons(i) or self.cons(i - 1) or not self.cons(i - 2):
            return False
        return self.b[i] not in ("w", "x", "y")

    def ends(self, s: str) -> bool:
        length = len(s)
        if length > self.k + 1:
            return False
        if self.b[self.k - length + 1 : self.k + 1] != list(s):
            return False
        self.j = self.k - length
        return True

    def set_to(self, s: str) -> None:
        self.b[self.j + 1 :] = list(s)
        self.k = self.j + len(s)

    def replace_if_measure(self, s: str) -> None:
        if self.m() > 0:
            self.set_to(s)

    # -- steps ----------------------------------------------------------

    def step1ab(self) -> None:
        if self.b[self.k] == "s":
            if self.ends("sses"):
                self.k -= 2
            elif self.ends("ies"):
                self.set_to("i")
            elif self.b[self.k - 1] != "s":
                self.k -= 1
        if self.ends("eed"):
            if self.m() > 0:
                self.k -= 1
        elif (self.ends("ed") or self.ends("ing")) and self.vowel_in_stem():
            self.k = self.j
            if self.ends("at"):
                self.set_to("ate")
            elif self.ends("bl"):
                self.set_to("ble")
            elif self.ends("iz"):
                self.set_to("ize")
            elif self.double_cons(self.k):
                self.k -= 1
                if self.b[self.k] in ("l", "s", "z"):
                    self.k += 1
            elif self.m() == 1 and self.cvc(self.k):
                self.set_to("e")

    def step1c(self) -> None:
        if self.ends("y") and self.vowel_in_stem():
            self.b[self.k] = "i"

    def step2(self) -> None:
        if self.k < 1:
            return
        ch = self.b[self.k - 1]
        if ch == "a":
            if self.ends("ational"):
                self.replace_if_measure("ate")
            elif self.ends("tional"):
                self.replace_if_measure("tion")
        elif ch == "c":
            if self.ends("enci"):
                self.replace_if_measure("ence")
            elif self.ends("anci"):
                self.replace_if_measure("ance")
        elif ch == "e":
            if self.ends("izer"):
                self.replace_if_measure("ize")
        elif ch == "l":
            if self.ends("abli"):
                self.replace_if_measure("able")
            elif self.ends("alli"):
                self.replace_if_measure("al")
            elif self.ends("entli"):
                self.replace_if_measure("ent")
            elif self.ends("eli"):
                self.replace_if_measure("e")
            elif self.ends("ousli"):
                self.replace_if_measure("ous")
        elif ch == "o":
            if self.ends("ization"):
                self.replace_if_measure("ize")
            elif self.ends("ation"):
                self.replace_if_measure("ate")
            elif self.ends("ator"):
                self.replace_if_measure("ate")
        elif ch == "s":
            if self.ends("alism"):
                self.replace_if_measure("al")
            elif self.ends("iveness"):
                self.replace_if_measure("ive")
            elif self.ends("fulness"):
                self.replace_if_measure("ful")
            elif self.ends("ousness"):
                self.replace_if_measure("ous")
        elif ch == "t":
            if self.ends("aliti"):
                self.replace_if_measure("al")
            elif self.ends("iviti"):
                self.replace_if_measure("ive")
            elif self.ends("biliti"):
                self.replace_if_measure("ble")

    def step3(self) -> None:
        ch = self.b[self.k]
        if ch == "e":
            if self.ends("icate"):
                self.replace_if_measure("ic")
            elif self.ends("ative"):
                self.replace_if_measure("")
            elif self.ends("alize"):
                self.replace_if_measure("al")
        elif ch == "i":
            if self.ends("iciti"):
                self.replace_if_measure("ic")
        elif ch == "l":
            if self.ends("ical"):
                self.replace_if_measure("ic")
            elif self.ends("ful"):
                self.replace_if_measure("")
        elif ch == "s":
            if self.ends("ness"):
                self.replace_if_measure("")

    def step4(self) -> None:
        if self.k < 1:
            return
        ch = self.b[self.k - 1]
        if ch == "a":
            if not self.ends("al"):
                return
        elif ch == "c":
            if not (self.ends("ance") or self.ends("ence")):
                return
        elif ch == "e":
            if not self.ends("er"):
                return
        elif ch == "i":
            if not self.ends("ic"):
                return
        elif ch == "l":
            if not (self.ends("able") or self.ends("ible")):
                return
        elif ch == "n":
            if not (
                self.ends("ant")
                or self.ends("ement")
                or self.ends("ment")
                or self.ends("ent")
            ):
                return
        elif ch == "o":
            ion = self.ends("ion") and self.b[self.j] in ("s", "t")
            if not (ion or self.ends("ou")):
                return
        elif ch == "s":
            if not self.ends("ism"):
                return
        elif ch == "t":
            if not (self.ends("ate") or self.ends("iti")):
                return
        elif ch == "u":
            if not self.ends("ous"):
                return
        elif ch == "v":
            if not self.ends("ive"):
                return
        elif ch == "z":
            if not self.ends("ize"):
                return
        else:
            return
        if self.m() > 1:
            self.k = self.j

    def step5(self) -> None:
        self.j = self.k
        if self.b[self.k] == "e":
            a = self.m()
            if a > 1 or (a == 1 and not self.cvc(self.k - 1)):
                self.k -= 1
        if self.b[self.k] == "l" and self.double_cons(self.k) and self.m() > 1:
            self.k -= 1

    def result(self) -> str:
        return "".join(self.b[: self.k + 1])


def stem(word: str) -> str:
    """Stem a single lowercase word."""
    if len(word) <= 2:
        return word
    buf = _PorterBuffer(word)
    buf.step1ab()
    buf.step1c()
    buf.step2()
    buf.step3()
    buf.step4()
    buf.step5()
    return buf.result()
