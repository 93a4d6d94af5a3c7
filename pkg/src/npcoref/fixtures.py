"""Small hand-parsed documents used by the tests and demo scripts.

``three_people`` is a toy example about three people with a gold annotation and three
hypothetical system outputs. The others are short news-style passages with a
gold chain set and, where relevant, a faulty system chain set.
"""

from __future__ import annotations

from .builder import DocBuilder
from .model import AnnotatedDocument, Chain

_ARRIVED = "{first}|NNP|2|compound {last}|NNP|3|nsubj arrived|VBD|0|root .|.|3|punct"
_HE = "he|PRP|2|nsubj {verb}|VBD|0|root .|.|2|punct"


def _he(k: int):
    """The k-th (1-based) ``he`` of the three_people document."""
    return ("he", k - 1)


def three_people() -> tuple[AnnotatedDocument, dict[int, list[Chain]]]:
    """Gold document and the three system solutions, keyed 1..3.

    Gold: {John Doe, he5..he9}, {Richard Roe, he1, he2}, {Joe Smith, he3, he4}.
    """
    b = DocBuilder("three_people")
    verbs = iter(["sat", "left", "sat", "left", "spoke", "smiled", "waved", "nodded", "left"])
    for first, last, n in (("Richard", "Roe", 2), ("Joe", "Smith", 2), ("John", "Doe", 5)):
        b.sentence(_ARRIVED.format(first=first, last=last))
        for _ in range(n):
            b.sentence(_HE.format(verb=next(verbs)))
    b.ner("PER", "Richard Roe", "Joe Smith", "John Doe")
    b.chain("John Doe", *[_he(k) for k in range(5, 10)])
    b.chain("Richard Roe", _he(1), _he(2))
    b.chain("Joe Smith", _he(3), _he(4))
    gold = b.build()

    def chains(*groups):
        return [Chain(k, [b.find(r) for r in g]) for k, g in enumerate(groups)]

    solutions = {
        1: chains(["John Doe"] + [_he(k) for k in range(5, 10)]),
        2: chains([_he(1), _he(2)], [_he(3), _he(4)], [_he(k) for k in range(5, 10)]),
        3: chains(["Richard Roe", _he(1)], ["Joe Smith", _he(3)], ["John Doe", _he(5), _he(6)]),
    }
    return gold, solutions


def curzio() -> tuple[AnnotatedDocument, list[Chain]]:
    """One person named three ways; the system splits him in two chains."""
    b = DocBuilder("curzio")
    b.sentence("Frank|NNP|2|compound Curzio|NNP|0|root .|.|2|punct")
    b.sentence("Many|JJ|2|amod people|NNS|4|nsubj now|RB|4|advmod claim|VBP|0|root to|TO|7|mark "
               "have|VB|7|aux predicted|VBN|4|xcomp the|DT|10|det 1987|CD|10|nummod crash|NN|7|dobj "
               ".|.|4|punct")
    b.sentence("Queens|NNP|3|compound newsletter|NN|3|compound writer|NN|6|compound Francis|NNP|6|compound "
               "X.|NNP|6|compound Curzio|NNP|8|nsubj actually|RB|8|advmod did|VBD|0|root it|PRP|8|dobj "
               ":|:|8|punct He|PRP|12|nsubj stated|VBD|8|parataxis it|PRP|12|dobj in|IN|12|prep "
               "writing|NN|14|pobj .|.|8|punct")
    b.sentence("Mr.|NNP|2|compound Curzio|NNP|3|nsubj says|VBZ|0|root it|PRP|6|nsubj will|MD|6|aux "
               "depend|VB|3|ccomp on|IN|6|prep the|DT|11|det Federal|NNP|11|compound "
               "Reserve|NNP|11|compound Board|NNP|7|pobj .|.|3|punct")
    b.sentence("If|IN|3|mark it|PRP|3|nsubj cuts|VBZ|8|advcl the|DT|5|det rate|NN|3|dobj ,|,|8|punct "
               "he|PRP|8|nsubj says|VBZ|0|root ,|,|8|punct that|DT|12|nsubj could|MD|12|aux "
               "quiet|VB|8|ccomp things|NNS|12|dobj down|RP|12|prt .|.|8|punct")
    b.ner("PER", "Frank Curzio", "Francis X. Curzio", ("Curzio", 2))
    b.ner("ORG", "Federal Reserve Board")
    b.chain("Frank Curzio", "Queens newsletter writer Francis X. Curzio", "He", "Mr. Curzio", "he")
    doc = b.build()
    system = [
        Chain(0, [b.find("Queens newsletter writer Francis X. Curzio"), b.find("He")]),
        Chain(1, [b.find("Frank Curzio"), b.find("Mr. Curzio"), b.find("he")]),
    ]
    return doc, system


def annan_turk() -> tuple[AnnotatedDocument, list[Chain]]:
    """Two officials with similar titles; the system merges them."""
    b = DocBuilder("annan_turk")
    b.sentence("UN|NNP|3|compound Secretary|NNP|3|compound General|NNP|5|compound Kofi|NNP|5|compound "
               "Annan|NNP|6|nsubj said|VBD|0|root Wednesday|NNP|6|tmod .|.|6|punct")
    b.sentence("In|IN|9|prep a|DT|4|det new|JJ|4|amod report|NN|1|pobj ,|,|9|punct the|DT|8|det "
               "Secretary|NNP|8|compound General|NNP|9|nsubj says|VBZ|0|root democratization|NN|12|nsubj "
               "has|VBZ|12|aux taken|VBN|9|ccomp root|NN|12|dobj .|.|9|punct")
    b.sentence("UN|NNP|4|compound Assistant|NNP|4|compound Secretary|NNP|4|compound General|NNP|6|compound "
               "Danilo|NNP|6|compound Turk|NNP|7|nsubj told|VBD|0|root reporters|NNS|7|dobj .|.|7|punct")
    b.ner("PER", "Kofi Annan", "Danilo Turk")
    b.ner("ORG", "UN", ("UN", 1))
    annan = "UN Secretary General Kofi Annan"
    turk = "UN Assistant Secretary General Danilo Turk"
    b.chain(annan, "the Secretary General")
    b.chain(turk)
    doc = b.build()
    system = [Chain(0, [b.find(annan), b.find("the Secretary General"), b.find(turk)])]
    return doc, system


def peterson() -> tuple[AnnotatedDocument, list[Chain]]:
    """Husband and wife sharing a surname; the system merges them."""
    b = DocBuilder("peterson")
    b.sentence("The|DT|4|det Laci|NNP|3|compound Peterson|NNP|4|compound case|NN|5|nsubj has|VBZ|0|root "
               "an|DT|8|det unusual|JJ|8|amod request|NN|5|dobj from|IN|8|prep Scott|NNP|11|compound "
               "Peterson|NNP|13|poss 's|POS|11|possessive attorney|NN|9|pobj .|.|5|punct")
    b.sentence("A|DT|2|det pair|NN|11|nsubj of|IN|2|prep Laci|NNP|5|compound Peterson|NNP|7|poss "
               "'s|POS|5|possessive shoes|NNS|3|pobj could|MD|11|aux be|VB|11|cop important|JJ|11|amod "
               "evidence|NN|0|root in|IN|11|prep Scott|NNP|15|poss 's|POS|13|possessive trial|NN|12|pobj "
               ".|.|11|punct")
    b.sentence("She|PRP|3|nsubj is|VBZ|3|aux asking|VBG|0|root for|IN|3|prep the|DT|6|det shoes|NNS|4|pobj "
               ".|.|3|punct")
    b.sentence("Peterson|NNP|5|nsubj was|VBD|5|cop not|RB|5|neg in|IN|5|case court|NN|0|root "
               "yesterday|NN|5|tmod .|.|5|punct")
    b.sentence("Peterson|NNP|2|nsubj awaits|VBZ|0|root trial|NN|2|dobj in|IN|2|prep the|DT|6|det "
               "murder|NN|4|pobj of|IN|6|prep his|PRP$|9|poss wife|NN|7|pobj Laci|NNP|9|appos .|.|2|punct")
    b.ner("PER", "Laci Peterson", "Scott Peterson", ("Laci Peterson", 1), ("Scott", 1),
          ("Peterson", 3), ("Peterson", 4), ("Laci", 2))
    b.chain("Laci Peterson", ("Laci Peterson", 1), "She", ("Laci", 2))
    b.chain("Scott Peterson", ("Scott", 1), ("Peterson", 3), ("Peterson", 4), "his")
    doc = b.build()
    system = [Chain(0, [b.find(r) for r in (
        "Laci Peterson", "Scott Peterson", ("Laci Peterson", 1), ("Scott", 1), "She", ("Peterson", 3), "his",
    )])]
    return doc, system


def henry_barry() -> AnnotatedDocument:
    """Subject pronoun following a subject name in the previous sentence."""
    b = DocBuilder("henry_barry")
    b.sentence("Henry|NNP|2|nsubj went|VBD|0|root to|TO|4|aux see|VB|2|xcomp Barry|NNP|4|dobj "
               "in|IN|4|prep the|DT|8|det hospital|NN|6|pobj .|.|2|punct")
    b.sentence("Afterward|RB|4|advmod ,|,|4|punct he|PRP|4|nsubj ate|VBD|0|root a|DT|6|det "
               "pizza|NN|4|dobj .|.|4|punct")
    b.ner("PER", "Henry", "Barry")
    b.chain("Henry", "he")
    return b.build()


def far_pronoun(gap: int = 150) -> AnnotatedDocument:
    """A name, then an object pronoun ``gap`` tokens after it."""
    b = DocBuilder(f"far_pronoun_{gap}")
    b.sentence("Ann|NNP|2|nsubj left|VBD|0|root .|.|2|punct")
    filler = gap - 5
    while filler > 0:
        n = min(filler, 40)
        b.sentence(" ".join([f"rain|NN|{n}|dep"] * (n - 1) + ["fell|VBD|0|root"]))
        filler -= n
    b.sentence("Rain|NN|2|nsubj hit|VBD|0|root her|PRP|2|dobj .|.|2|punct")
    b.ner("PER", "Ann")
    return b.build(with_chains=False)
