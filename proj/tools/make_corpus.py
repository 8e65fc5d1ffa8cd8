#!/usr/bin/env python3
"""Writes the golden translation corpus and the assessment fixture.

The expected completions are assembled here from first principles (string
templates over a small noun table), not by running the C++ translator, so the
corpus test compares two independent implementations.

    python3 tools/make_corpus.py            # rewrite both files
    python3 tools/make_corpus.py --check    # exit 1 if they are stale
"""

import argparse
import json
import pathlib
import random
import re
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "data" / "golden.jsonl"
MIXED = ROOT / "tests" / "fixtures" / "assessment_mix.jsonl"

# surface singular, surface plural, predicate
NOUNS = {
    "tomato": ("tomato", "tomatoes", "tomato"),
    "onion": ("onion", "onions", "onion"),
    "redOnion": ("red onion", "red onions", "redOnion"),
    "carrot": ("carrot", "carrots", "carrot"),
    "pepper": ("pepper", "peppers", "pepper"),
    "greenPepper": ("green pepper", "green peppers", "greenPepper"),
    "redPepper": ("red pepper", "red peppers", "redPepper"),
    "greenChiliPepper": ("green chili pepper", "green chili peppers", "greenChiliPepper"),
    "vegetable": ("vegetable", "vegetables", "vegetable"),
    "fruit": ("fruit", "fruits", "fruit"),
    "banana": ("banana", "bananas", "banana"),
    "mango": ("mango", "mangoes", "mango"),
    "apple": ("apple", "apples", "apple"),
    "egg": ("egg", "eggs", "egg"),
    "doughnut": ("doughnut", "doughnuts", "doughnut"),
    "cookie": ("cookie", "cookies", "cookie"),
    "ingredient": ("ingredient", "ingredients", "ingredient"),
    "object": ("object", "objects", "object"),
    "box": ("box", "boxes", "box"),
    "bowl": ("bowl", "bowls", "bowl"),
    "tray": ("tray", "trays", "tray"),
    "kitchenTool": ("tool", "tools", "kitchenTool"),
    "cookingKnife": ("knife", "knives", "cookingKnife"),
    "whisk": ("whisk", "whisks", "whisk"),
    "dough": ("dough", "doughs", "dough"),
    "sugar": ("sugar", "sugars", "sugar"),
}

NUMBER_WORDS = ["zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
                "eleven", "twelve"]

AMBIGUOUS = {"a couple of": 2, "few": 2, "a few": 3, "some": 4, "several": 5, "many": 10}


def sg(key):
    return NOUNS[key][0]


def pl(key):
    return NOUNS[key][1]


def pred(key):
    return NOUNS[key][2]


# --- formula text, in the translator's normal form -----------------------

def lit(p, var="x0", neg=False):
    return ("-" if neg else "") + f"{p}({var})"


def conj(*parts):
    return " & ".join(parts)


def card(body, var="x0"):
    return f"|exists {var} ({body}).|"


def query(*exprs):
    return {"type": "query", "expressions": list(exprs)}


def command(exprs, antecedent, action, args):
    return {"type": "command", "expressions": [list(exprs)],
            "commands": [f"{conj(*antecedent)} -> {action}({', '.join(args)})."]}


INVALID = {"type": "invalid"}


def record(prompt, completion, tag):
    return {"prompt": prompt, "completion": completion, "category": completion["type"], "tag": tag}


# --- queries -------------------------------------------------------------

def query_pairs():
    out = []
    add = lambda prompt, comp, tag: out.append(record(prompt, comp, tag))

    # universal and negative
    for r, s in [("object", "box"), ("vegetable", "tomato"), ("pepper", "greenPepper"), ("fruit", "banana")]:
        add(f"All {pl(r)} are {pl(s)}", query(f"all x0 ({lit(pred(r))} -> {lit(pred(s))})."), "all")
    add("Every vegetable is a pepper", query("all x0 (vegetable(x0) -> pepper(x0))."), "every")
    add("Every egg is an ingredient", query("all x0 (egg(x0) -> ingredient(x0))."), "every")
    add("All peppers are not red peppers", query("all x0 (pepper(x0) -> -redPepper(x0))."), "all")
    add("Are all tomatoes vegetables?", query("all x0 (tomato(x0) -> vegetable(x0))."), "all")
    for r, s in [("object", "box"), ("fruit", "vegetable"), ("tool", "bowl")]:
        r = "kitchenTool" if r == "tool" else r
        add(f"No {sg(r)} is a {sg(s)}", query(f"-(exists x0 ({conj(lit(pred(r)), lit(pred(s)))}))."), "none")
    add("There are no bananas", query("-(exists x0 (banana(x0)))."), "none")
    add("There are zero mangoes in the kitchen", query("-(exists x0 (mango(x0)))."), "zero")
    add("There are zero eggs", query("-(exists x0 (egg(x0)))."), "zero")

    # numerals and bounds
    add("There is a box", query(f"{card(lit('box'))} >= 1"), "a")
    add("Is there an apple?", query(f"{card(lit('apple'))} >= 1"), "a")
    add("There is one onion", query(f"{card(lit('onion'))} == 1"), "one")
    add("There are two carrots", query(f"{card(lit('carrot'))} == 2"), "two")
    add("There are 7 eggs", query(f"{card(lit('egg'))} == 7"), "numeral")
    add("Are there 4 bowls in the kitchen?", query(f"{card(lit('bowl'))} == 4"), "numeral")
    add("Three vegetables are tomatoes", query(f"{card(conj(lit('vegetable'), lit('tomato')))} == 3"), "numeral")
    for n, noun in [(2, "box"), (1, "whisk"), (5, "tomato"), (3, "pepper")]:
        word = NUMBER_WORDS[n] if n < 4 else str(n)
        add(f"There are at least {word} {pl(noun)}", query(f"{card(lit(pred(noun)))} >= {n}"), "at least")
    add("There is at least one knife", query(f"{card(lit('cookingKnife'))} >= 1"), "at least")
    for n, noun in [(2, "onion"), (6, "egg"), (1, "tray")]:
        add(f"There are at most {n} {pl(noun)}", query(f"{card(lit(pred(noun)))} <= {n}"), "at most")
    add("At most two fruits are bananas", query(f"{card(conj(lit('fruit'), lit('banana')))} <= 2"), "at most")
    for n, noun in [(2, "box"), (3, "mango"), (9, "egg")]:
        word = NUMBER_WORDS[n] if n < 4 else str(n)
        add(f"There are exactly {word} {pl(noun)}", query(f"{card(lit(pred(noun)))} == {n}"), "exactly")
    add("Exactly one vegetable is a carrot", query(f"{card(conj(lit('vegetable'), lit('carrot')))} == 1"), "exactly")
    add("Is there exactly one oven?", query(f"{card(lit('oven'))} == 1"), "exactly")

    # proportional
    for r, s in [("vegetable", "redOnion"), ("object", "box"), ("fruit", "banana"), ("pepper", "greenPepper")]:
        add(f"Most {pl(r)} are {pl(s)}",
            query(f"{card(conj(lit(pred(r)), lit(pred(s))))} > {card(conj(lit(pred(r)), lit(pred(s), neg=True)))}"),
            "most")
    add("Most peppers are not red peppers",
        query(f"{card(conj(lit('pepper'), lit('redPepper', neg=True)))} > {card(conj(lit('pepper'), lit('redPepper')))}"),
        "most")
    for prefix in ["The majority of", "The majority of the"]:
        add(f"{prefix} vegetables are tomatoes",
            query(f"{card(conj(lit('vegetable'), lit('tomato')))} > {card(conj(lit('vegetable'), lit('tomato', neg=True)))}"),
            "majority of")
    for r, s in [("vegetable", "onion"), ("egg", "ingredient"), ("pepper", "redPepper")]:
        add(f"Half of the {pl(r)} are {pl(s)}",
            query(f"2 * {card(conj(lit(pred(r)), lit(pred(s))))} == {card(lit(pred(r)))}"), "half of")
    add("More than half of the fruits are bananas",
        query(f"2 * {card(conj(lit('fruit'), lit('banana')))} > {card(lit('fruit'))}"), "more than half of")
    add("More than half of the vegetables are peppers",
        query(f"2 * {card(conj(lit('vegetable'), lit('pepper')))} > {card(lit('vegetable'))}"), "more than half of")
    add("Less than half of the peppers are green peppers",
        query(f"2 * {card(conj(lit('pepper'), lit('greenPepper')))} < {card(lit('pepper'))}"), "less than half of")
    add("Less than half of the ingredients are eggs",
        query(f"2 * {card(conj(lit('ingredient'), lit('egg')))} < {card(lit('ingredient'))}"), "less than half of")

    # comparatives
    add("There are more boxes than tools", query(f"{card(lit('box'))} > {card(lit('kitchenTool'))}"), "more than")
    add("There are more tomatoes than onions", query(f"{card(lit('tomato'))} > {card(lit('onion'))}"), "more than")
    add("There are fewer bananas than apples", query(f"{card(lit('banana'))} < {card(lit('apple'))}"), "less than")
    add("There are less eggs than bowls", query(f"{card(lit('egg'))} < {card(lit('bowl'))}"), "less than")
    add("There are more than 3 onions", query(f"{card(lit('onion'))} > 3"), "more than")
    add("There are more than two knives", query(f"{card(lit('cookingKnife'))} > 2"), "more than")
    add("There are less than 4 carrots", query(f"{card(lit('carrot'))} < 4"), "less than")
    add("There are fewer than five eggs", query(f"{card(lit('egg'))} < 5"), "less than")
    add("There are twice as many peppers than other vegetables in the kitchen",
        query(f"{card(lit('pepper'))} == 2 * {card(conj(lit('pepper', neg=True), lit('vegetable')))}"), "twice as many")
    add("There are twice as many boxes as other objects",
        query(f"{card(lit('box'))} == 2 * {card(conj(lit('box', neg=True), lit('object')))}"), "twice as many")
    add("There are twice as many eggs as bowls", query(f"{card(lit('egg'))} == 2 * {card(lit('bowl'))}"), "twice as many")
    add("There are three times more tomatoes than onions",
        query(f"{card(lit('tomato'))} == 3 * {card(lit('onion'))}"), "times more")
    add("There are 4 times more eggs than other ingredients",
        query(f"{card(lit('egg'))} == 4 * {card(conj(lit('egg', neg=True), lit('ingredient')))}"), "times more")
    for a, b, noun in [(3, 7, "onion"), (2, 4, "banana"), (1, 3, "whisk")]:
        add(f"There are between {a} and {b} {pl(noun)}",
            query(f"{card(lit(pred(noun)))} >= {a}", f"{card(lit(pred(noun)))} <= {b}"), "between")

    # dozens
    add("There are a dozen eggs", query(f"{card(lit('egg'))} == 12"), "a dozen")
    add("Is there a dozen cookies?", query(f"{card(lit('cookie'))} == 12"), "a dozen")
    add("There are half a dozen eggs", query(f"{card(lit('egg'))} == 6"), "half a dozen")
    add("There are half a dozen doughnuts", query(f"{card(lit('doughnut'))} == 6"), "half a dozen")
    add("There are less than a dozen eggs", query(f"{card(lit('egg'))} < 12"), "a dozen")
    add("There are at least half a dozen tomatoes", query(f"{card(lit('tomato'))} >= 6"), "half a dozen")

    # ambiguous quantifiers
    for phrase, value in AMBIGUOUS.items():
        for noun in ["doughnut", "tomato"]:
            add(f"There are {phrase} {pl(noun)}", query(f"{card(lit(pred(noun)))} >= {value}"), phrase)
    add("There are several doughnuts", query(f"{card(lit('doughnut'))} >= 5"), "several")
    add("There are many boxes", query(f"{card(lit('box'))} >= 10"), "many")
    add("Do we have some eggs?", query(f"{card(lit('egg'))} >= 4"), "some")
    add("Several vegetables are carrots", query(f"{card(conj(lit('vegetable'), lit('carrot')))} >= 5"), "several")

    # counting
    for noun in ["box", "greenChiliPepper", "tomato", "egg", "vegetable"]:
        add(f"How many {pl(noun)} are there?", query(card(lit(pred(noun)))), "how many")
    add("How many green chili peppers are there in the kitchen?", query(card(lit("greenChiliPepper"))), "how many")
    add("How many vegetables are tomatoes?", query(card(conj(lit("vegetable"), lit("tomato")))), "how many")
    add("How many peppers are not red peppers?", query(card(conj(lit("pepper"), lit("redPepper", neg=True)))),
        "how many")
    add("How many knives do we have?", query(card(lit("cookingKnife"))), "how many")
    add("Count the bowls", query(card(lit("bowl"))), "how many")
    return out


# --- commands ------------------------------------------------------------

def atleast(p, var, n):
    return f"{card(lit(p, var), var)} >= {n}"


def command_pairs():
    out = []
    add = lambda prompt, comp, tag: out.append(record(prompt, comp, tag))
    robot = "robot(x0)"

    # cut: object x1, knife x2 (implicit unless stated)
    def cut(prompt, noun, n=None, every=False, const=None, tool=None, verb_tag="cut"):
        exprs, ante, args = [], [robot], ["x0"]
        if const:
            ante.append(lit(pred(noun), const))
            args.append(const)
        else:
            ante.append(lit(pred(noun), "x1"))
            args.append("x1")
            if not every:
                exprs.append(atleast(pred(noun), "x1", n))
        if tool == "explicit":
            exprs.append(atleast("cookingKnife", "x2", 1))
        if isinstance(tool, str) and tool.startswith("Knife"):
            ante.append(lit("cookingKnife", tool))
            args.append(tool)
        else:
            ante.append(lit("cookingKnife", "x2"))
            args.append("x2")
        add(prompt, command(exprs, ante, "cut", args), verb_tag)

    cut("Cut 5 onions using a knife", "onion", 5, tool="explicit")
    cut("Cut several bananas with a knife", "banana", 5, tool="explicit")
    cut("Cut several tomatoes", "tomato", 5)
    cut("Cut a couple of carrots", "carrot", 2)
    cut("Cut a few mangoes", "mango", 3)
    cut("Cut some apples", "apple", 4)
    cut("Cut many onions", "onion", 10)
    cut("Cut few peppers", "pepper", 2)
    cut("Cut a tomato", "tomato", 1)
    cut("Cut an onion with the knife", "onion", 1, tool="explicit")
    cut("Cut three carrots", "carrot", 3)
    cut("Slice 2 bananas", "banana", 2)
    cut("Chop all red onions", "redOnion", every=True)
    cut("Cut every tomato", "tomato", every=True)
    cut("Cut tomato Tomato1", "tomato", const="Tomato1")
    cut("Next cut 1 mango using cooking knife Knife1", "mango", 1, tool="Knife1")
    cut("Please cut at least 4 peppers", "pepper", 4)
    cut("Cut exactly 2 onions", "onion", 2)
    cut("Cut a dozen eggs", "egg", 12)
    cut("Cut half a dozen tomatoes", "tomato", 6)
    cut("Cut a bowl", "bowl", 1)
    cut("Dice 3 green peppers using a knife", "greenPepper", 3, tool="explicit")

    # fetch: object x1
    def fetch(prompt, noun, n=None, every=False, const=None):
        exprs, ante, args = [], [robot], ["x0"]
        if const and noun:
            ante.append(lit(pred(noun), const))
        if const:
            args.append(const)
        else:
            ante.append(lit(pred(noun), "x1"))
            args.append("x1")
            if not every:
                exprs.append(atleast(pred(noun), "x1", n))
        add(prompt, command(exprs, ante, "fetch", args), "fetch")

    fetch("Fetch 7 carrots", "carrot", 7)
    fetch("Fetch all green peppers", "greenPepper", every=True)
    fetch("Fetch each egg", "egg", every=True)
    fetch("Bring a whisk", "whisk", 1)
    fetch("Get two bowls", "bowl", 2)
    fetch("Fetch several tomatoes", "tomato", 5)
    fetch("Fetch some eggs", "egg", 4)
    fetch("Fetch the tray Tray1", "tray", const="Tray1")
    fetch("Fetch Robot1", None, const="Robot1")
    fetch("Take a knife", "cookingKnife", 1)
    fetch("Fetch a dozen eggs", "egg", 12)
    fetch("Fetch many doughnuts", "doughnut", 10)

    # mix: container x1, whisk x2
    def mix(prompt, noun, n=None, const=None, whisk=False):
        exprs, ante, args = [], [robot], ["x0"]
        if const:
            ante.append(lit(pred(noun), const))
            args.append(const)
        else:
            ante.append(lit(pred(noun), "x1"))
            args.append("x1")
            exprs.append(atleast(pred(noun), "x1", n))
        if whisk:
            exprs.append(atleast("whisk", "x2", 1))
        ante.append(lit("whisk", "x2"))
        args.append("x2")
        add(prompt, command(exprs, ante, "mix", args), "mix")

    mix("Mix bowl LargeBowl1", "bowl", const="LargeBowl1")
    mix("Blend the contents of the bowl Bowl1 using a whisk", "bowl", const="Bowl1", whisk=True)
    mix("Stir 2 bowls", "bowl", 2)
    mix("Mix a bowl with a whisk", "bowl", 1, whisk=True)
    mix("Whisk the contents of bowl MediumBowl1", "bowl", const="MediumBowl1")

    # transfer: source x1, destination x2
    add("Move contents of MediumBowl1 to MediumBowl2",
        command([], [robot], "transfer", ["x0", "MediumBowl1", "MediumBowl2"]), "transfer")
    add("Pour the contents of Bowl1 into a tray",
        command([atleast("tray", "x2", 1)], [robot, lit("tray", "x2")], "transfer", ["x0", "Bowl1", "x2"]), "transfer")
    add("Transfer the contents of bowl LargeBowl1 to bowl MediumBowl1",
        command([], [robot, lit("bowl", "LargeBowl1"), lit("bowl", "MediumBowl1")], "transfer",
                ["x0", "LargeBowl1", "MediumBowl1"]), "transfer")
    add("Empty Tray1 into a bowl",
        command([atleast("bowl", "x2", 1)], [robot, lit("bowl", "x2")], "transfer", ["x0", "Tray1", "x2"]), "transfer")

    # bake: object x1, oven x2
    def bake(prompt, noun, n=None, const=None, oven=False):
        exprs, ante, args = [], [robot], ["x0"]
        if const:
            ante.append(lit(pred(noun), const))
            args.append(const)
        else:
            ante.append(lit(pred(noun), "x1"))
            args.append("x1")
            exprs.append(atleast(pred(noun), "x1", n))
        if oven:
            exprs.append(atleast("oven", "x2", 1))
        ante.append(lit("oven", "x2"))
        args.append("x2")
        add(prompt, command(exprs, ante, "bake", args), "bake")

    bake("Bake 4 cookies", "cookie", 4)
    bake("Bake the dough Dough1 in the oven", "dough", const="Dough1", oven=True)
    bake("Bake a tray", "tray", 1)
    bake("Bake several doughnuts", "doughnut", 5)

    # line: tray x1, baking paper x2
    def line(prompt, n=None, const=None, paper=False):
        exprs, ante, args = [], [robot], ["x0"]
        if const:
            ante.append(lit("tray", const))
            args.append(const)
        else:
            ante.append(lit("tray", "x1"))
            args.append("x1")
            exprs.append(atleast("tray", "x1", n))
        if paper:
            exprs.append(atleast("bakingPaper", "x2", 1))
        ante.append(lit("bakingPaper", "x2"))
        args.append("x2")
        add(prompt, command(exprs, ante, "line", args), "line")

    line("Cover 3 trays with paper", 3, paper=True)
    line("Line tray Tray1", const="Tray1")
    line("Line 2 trays with baking paper", 2, paper=True)
    line("Cover a tray", 1)

    # sprinkle: object x1, topping x2 (both explicit)
    def sprinkle(prompt, noun, n, topping, tn=1, const=None):
        exprs, ante, args = [], [robot], ["x0"]
        if const:
            ante.append(lit(pred(noun), const))
            args.append(const)
        else:
            ante.append(lit(pred(noun), "x1"))
            args.append("x1")
            exprs.append(atleast(pred(noun), "x1", n))
        ante.append(lit(pred(topping), "x2"))
        args.append("x2")
        exprs.append(atleast(pred(topping), "x2", tn))
        add(prompt, command(exprs, ante, "sprinkle", args), "sprinkle")

    sprinkle("Sprinkle 2 doughnuts with sugar", "doughnut", 2, "sugar")
    sprinkle("Sprinkle a cookie with sugar", "cookie", 1, "sugar")
    sprinkle("Sprinkle doughnut Doughnut1 with sugar", "doughnut", None, "sugar", const="Doughnut1")
    sprinkle("Dust several cookies with sugar", "cookie", 5, "sugar")

    # shape: object x1
    def shape(prompt, noun, n=None, const=None):
        exprs, ante, args = [], [robot], ["x0"]
        if const:
            ante.append(lit(pred(noun), const))
            args.append(const)
        else:
            ante.append(lit(pred(noun), "x1"))
            args.append("x1")
            exprs.append(atleast(pred(noun), "x1", n))
        add(prompt, command(exprs, ante, "shape", args), "shape")

    shape("Shape the dough Dough1", "dough", const="Dough1")
    shape("Shape 3 cookies", "cookie", 3)
    shape("Roll a dough", "dough", 1)
    shape("Shape a few doughnuts", "doughnut", 3)
    return out


def invalid_pairs():
    prompts = ["I like swimming", "Fetch 7 carrots and cut them", "What is the weather like today?",
               "Tell me a joke", "Cut something", "Recommend me a movie", "Fly to the moon", "Sing a song",
               "Fetch no onions", "Cut most tomatoes", "Wash the dishes", "Hello robot"]
    return [record(p, INVALID, "invalid") for p in prompts]


def golden():
    return query_pairs() + command_pairs() + invalid_pairs()


# --- assessment fixture --------------------------------------------------

def renamed(completion):
    """Same IR with its highest-numbered variable renamed: an alpha-variant."""
    c = json.loads(json.dumps(completion))
    text = json.dumps(c)
    top = max(int(n) for n in re.findall(r"\bx(\d+)\b", text))
    fresh = "y" if c["type"] == "query" else "x9"
    return json.loads(re.sub(rf"\bx{top}\b", fresh, text))


def swapped(completion):
    """Conjunct order swapped inside every two-literal cardinality body."""
    c = json.loads(json.dumps(completion))
    out = []
    for e in c["expressions"]:
        parts = e.split("|")
        for i in range(1, len(parts), 2):
            head, body = parts[i].split("(", 1)
            inner = body[: -len(").")]
            lits = inner.split(" & ")
            if len(lits) == 2:
                parts[i] = f"{head}({lits[1]} & {lits[0]})."
        out.append("|".join(parts))
    c["expressions"] = out
    return c


def perturbed(completion):
    """A change of meaning: bump a number, flip a negation or swap a type."""
    c = json.loads(json.dumps(completion))
    if c["type"] == "command":
        if c["expressions"][0]:
            e = c["expressions"][0][0]
            lhs, n = e.rsplit(" ", 1)
            c["expressions"][0][0] = f"{lhs} {int(n) + 1}"
        else:
            c["commands"][0] = c["commands"][0].replace("robot(x0)", "robot(x0) & tray(Tray9)")
        return c
    e = c["expressions"][0]
    for a, b in [(" -> -", " -> "), (" -> ", " -> -")]:
        if a in e:
            c["expressions"][0] = e.replace(a, b, 1)
            return c
    if e.startswith("-("):
        c["expressions"][0] = e[2:-2] + "."
        return c
    for op in [" >= ", " <= ", " == ", " > ", " < "]:
        if op in e:
            lhs, rhs = e.split(op, 1)
            if rhs.isdigit():
                c["expressions"][0] = f"{lhs}{op}{int(rhs) + 1}"
            else:
                flip = {" > ": " < ", " < ": " > ", " >= ": " < ", " <= ": " > ", " == ": " > "}[op]
                c["expressions"][0] = f"{lhs}{flip}{rhs}"
            return c
    c["expressions"][0] = e.replace("(x0)).|", "(x0) & egg(x0)).|", 1)
    return c


def mixed(pairs):
    """132 records: 97 identical, 9 equivalent and 26 wrong pre-recorded outputs."""
    rng = random.Random(20230414)
    # Commands the knowledge base never admits stay rejected under any
    # perturbation, so they would not make a wrong row.
    never_run = {"Cut a bowl", "Fetch Robot1", "Bake a tray"}
    pool = [p for p in pairs if p["category"] != "invalid" and p["prompt"] not in never_run]
    rng.shuffle(pool)
    chosen = pool[:132]
    rows = []
    for i, p in enumerate(chosen):
        row = dict(p)
        if i < 97:
            row["produced"] = p["completion"]
        elif i < 106:
            two_literal = p["category"] == "query" and any(" & " in e and "|" in e for e in p["completion"]["expressions"])
            row["produced"] = swapped(p["completion"]) if two_literal else renamed(p["completion"])
        else:
            row["produced"] = perturbed(p["completion"])
        assert i < 97 or row["produced"] != p["completion"], p["prompt"]
        rows.append(row)
    return rows


def dump(rows):
    return "".join(json.dumps(r) + "\n" for r in rows)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="fail if the files on disk differ")
    args = ap.parse_args()
    pairs = golden()
    files = {GOLDEN: dump(pairs), MIXED: dump(mixed(pairs))}
    if args.check:
        stale = [str(p) for p, text in files.items() if not p.exists() or p.read_text() != text]
        if stale:
            print("stale:", ", ".join(stale))
            return 1
        return 0
    for path, text in files.items():
        path.write_text(text)
        print(f"{path.relative_to(ROOT)}: {text.count(chr(10))} records")
    return 0


if __name__ == "__main__":
    sys.exit(main())
