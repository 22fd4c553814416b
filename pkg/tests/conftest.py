import pytest

from squatscope.lexical import UnigramModel


SEEDS_CSV = """trademark,domain,category,rank,origin
facebook,facebook.com,Social Networks,3,AlexaTop500
paypal,paypal.com,Financial,40,AlexaTop500
youtube,youtube.com,Streaming,2,AlexaTop500
apple,apple.com,Computers,50,AlexaTop500
"""


@pytest.fixture
def seeds_csv(tmp_path):
    p = tmp_path / "seeds.csv"
    p.write_text(SEEDS_CSV)
    return p


@pytest.fixture(scope="session")
def toy_model():
    """A tiny unigram model where the obvious English split wins."""
    counts = {
        "activate": 400, "my": 9000, "credit": 700, "card": 900, "now": 5000,
        "secure": 600, "login": 800, "free": 3000, "shop": 1200, "online": 2000,
        "verify": 300, "account": 1100, "the": 20000, "store": 1500, "friends": 900,
        "a": 15000, "i": 9000,
    }
    return UnigramModel.from_counts(counts, total=1_000_000)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, passed: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
