"""Normal ordering, brackets and substitution under a central commutator table."""

from __future__ import annotations

from .coefficient import ONE
from .polynomial import NCPolynomial, commutator_formal
from ..errors import UnknownGenerator


def _check_generators(p, a):
    stray = [g for g in p.generators() if g not in a.rank]
    if stray:
        names = ", ".join(sorted(map(str, stray)))
        raise UnknownGenerator(f"generators not in the algebra: {names}")


def _add_into(acc, poly, coef):
    for w, c in poly.items():
        c = c * coef
        if w in acc:
            s = acc[w] + c
            if s:
                acc[w] = s
            else:
                del acc[w]
        else:
            acc[w] = c


def _word_normal_form(word, a):
    """Normal form of a single word, memoised per algebra.

    The leftmost adjacent inversion ``g h`` is rewritten to ``h g + [g,h]``.
    The swapped word has one inversion fewer and the bracket term is shorter,
    so the recursion terminates.
    """
    cache = a._nf_cache
    hit = cache.get(word)
    if hit is not None:
        return hit
    rank = a.rank
    result = None
    for i in range(len(word) - 1):
        g, h = word[i], word[i + 1]
        if rank[g] > rank[h]:
            acc = {}
            _add_into(acc, _word_normal_form(word[:i] + (h, g) + word[i + 2:], a), ONE)
            c = a.bracket(g, h)
            if c:
                _add_into(acc, _word_normal_form(word[:i] + word[i + 2:], a), c)
            result = NCPolynomial._raw(acc)
            break
    if result is None:
        result = NCPolynomial._raw({word: ONE})
    cache[word] = result
    return result


def is_normal_ordered(word, a):
    return all(a.rank[word[i]] <= a.rank[word[i + 1]] for i in range(len(word) - 1))


def normal_order(p, a):
    """Rewrite ``p`` so every word is sorted by ``a.order``."""
    p = NCPolynomial.coerce(p)
    _check_generators(p, a)
    acc = {}
    for word, coef in p.items():
        _add_into(acc, _word_normal_form(word, a), coef)
    return NCPolynomial._raw(acc)


def commutator(p, q, a):
    """Normal-ordered ``[p, q] = pq - qp``."""
    return normal_order(commutator_formal(p, q), a)


def substitute(p, s, a):
    """Replace every generator occurrence by its image, then normal-order under ``a``."""
    p = NCPolynomial.coerce(p)
    acc = {}
    images = {}
    for word, coef in p.items():
        prod = NCPolynomial.constant(coef)
        for g in word:
            if g not in images:
                images[g] = s.image(g)
            prod = prod * images[g]
        _add_into(acc, prod, ONE)
    return normal_order(NCPolynomial._raw(acc), a)
