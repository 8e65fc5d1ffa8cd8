import json
import os

import pytest

import cardinal

FIXTURES = os.path.join(os.path.dirname(__file__), "..", "..", "tests", "fixtures")


def read(name):
    with open(f"{FIXTURES}/{name}") as f:
        return f.read()


@pytest.fixture(scope="module")
def kb():
    return cardinal.KnowledgeBase.load(cardinal.data_path("kitchen.kb"))


@pytest.fixture(scope="module")
def lexicon(kb):
    lex = cardinal.Lexicon.load(cardinal.data_path("kitchen.lex"))
    lex.check_against(kb)
    return lex


def test_translate_cut_command(lexicon):
    ir = cardinal.translate("Cut 5 onions using a knife", lexicon)
    assert ir.kind == "command"
    wire = json.loads(ir.to_wire())
    assert wire["expressions"] == [["|exists x1 (onion(x1)).| >= 5", "|exists x2 (cookingKnife(x2)).| >= 1"]]
    assert wire["commands"] == ["robot(x0) & onion(x1) & cookingKnife(x2) -> cut(x0, x1, x2)."]


def test_out_of_scope_sentence_is_invalid(lexicon):
    assert cardinal.translate("I like swimming", lexicon).to_wire() == '{"type": "invalid"}'


def test_wire_round_trip(lexicon):
    ir = cardinal.translate("Most vegetables are red onions", lexicon)
    assert cardinal.parse_ir(ir.to_wire()) == ir


def test_witness_count_on_tomato_world():
    small_kb = cardinal.KnowledgeBase.parse(read("tomato_world.kb"))
    world = cardinal.Interpretation(read("tomato_world.sensors"), small_kb)
    assert world.count("|exists x (ingredient(x)).|") == 2
    assert world.members("ingredient") == ["Tomato1", "Tomato2"]
    models = cardinal.enumerate_models(read("tomato_world.sensors"), small_kb, "exists x (ingredient(x)).")
    assert models == [[("x", "Tomato1")], [("x", "Tomato2")]]


def test_query_answer(kb, lexicon):
    scenario = "\n".join(["Robot1 : robot @ Kitchen"] + [f"Pepper{i} : pepper @ Fridge" for i in range(1, 5)]
                         + ["Carrot1 : carrot @ Fridge", "Carrot2 : carrot @ Fridge"])
    sim = cardinal.Simulator(scenario, kb)
    world = cardinal.Interpretation(sim.sensors(), kb)
    ir = cardinal.translate("There are twice as many peppers than other vegetables", lexicon)
    assert world.answer(ir) is True
    assert world.answer(cardinal.translate("How many vegetables are there?", lexicon)) == 6


def test_rejected_command_leaves_world_alone(kb, lexicon):
    sim = cardinal.Simulator(read("tomato_world.scn") + "Bowl1 : bowl @ Cupboard\n", kb)
    before = sim.state_json()
    report = cardinal.run_command(cardinal.translate("Cut a bowl", lexicon), sim, kb)
    assert report["status"] == "rejected"
    assert sim.state_json() == before


def test_fetch_through_simulator_http(kb):
    sim = cardinal.Simulator(read("tomato_world.scn"), kb)
    status, body = sim.handle("POST", "/abe-sim-command", json.dumps({"command": "to-fetch", "args": ["Robot1", "Tomato1"]}))
    assert status == 200 and json.loads(body) == {"status": "ok"}
    state = {o["name"]: o for o in json.loads(sim.state_json())}
    assert state["Tomato1"]["at"] == "CounterTop"


def test_classify_variable_renaming(kb):
    golden = "{'type':'command','expressions':[['|exists x2 (whisk(x2)).| >= 1']], 'commands':['robot(x0) & bowl(Bowl1) & whisk(x2) -> mix(x0, Bowl1, x2).']}"
    produced = "{'type':'command','expressions':[['|exists x1 (whisk(x1)).| >= 1']], 'commands':['robot(x0) & bowl(Bowl1) & whisk(x1) -> mix(x0, Bowl1, x1).']}"
    assert cardinal.classify(golden, produced, kb)[0] == "equivalent"
    assert cardinal.format_percent(106 / 132) == "80.30%"


def test_errors_are_python_exceptions(kb):
    with pytest.raises(cardinal.ParseError):
        cardinal.normalize_formula("p(x) &")
    with pytest.raises(cardinal.Error):
        cardinal.Simulator("", kb)
