"""Read equations out of the LaTeX source and turn them into the expression grammar.

Kept independent of the catalog on purpose: the catalog's transcriptions are
compared against what this converter extracts from the LaTeX source.
"""

import re
from functools import lru_cache
from pathlib import Path

PAPER = Path(__file__).resolve().parents[1] / "paper.md"

_GREEK = {"xi": "xi", "lambda": "lambda", "theta": "theta", "eta": "eta",
          "alpha": "alpha", "beta": "beta"}


@lru_cache(maxsize=None)
def paper_text() -> str:
    return PAPER.read_text(encoding="utf-8")


def squash(s: str) -> str:
    return re.sub(r"\s+", "", s)


def paper_contains(fragment: str) -> bool:
    """Whitespace-insensitive containment test against the LaTeX source."""
    return squash(fragment) in squash(paper_text())


def equation_body(label: str) -> str:
    text = paper_text()
    i = text.index("\\label{%s}" % label)
    j = text.index("\\end{equation}", i)
    return text[i + len(label) + 8:j]


def display_after(anchor: str) -> str:
    """Right-hand side of the displayed formula that starts at ``anchor``."""
    text = paper_text()
    i = text.index(anchor)
    j = text.index("\\end{equation}", i)
    return text[i:j].rsplit("=", 1)[1]


def _flatten(body: str) -> str:
    body = re.sub(r"\\\\\[[^\]]*\]", " ", body)
    body = body.replace("\\\\", " ")
    body = re.sub(r"\\(begin|end)\{array\}(\{[^}]*\})?", " ", body)
    return body


def coproduct_rows(label: str) -> dict[str, str]:
    """{generator: rhs latex} for a table of Delta(...) rows."""
    body = _flatten(equation_body(label))
    head = re.compile(r"\(\s*([A-Z](?:_\{\d\d\})?)\s*\)\s*\$?\}?\s*&\s*=\s*&")
    marks = list(head.finditer(body))
    out = {}
    for k, m in enumerate(marks):
        end = marks[k + 1].start() if k + 1 < len(marks) else len(body)
        rhs = body[m.end():end]
        cut = rhs.rfind("\\mbox{$\\Delta")
        key = m.group(1).replace("_{", "").replace("}", "")
        out[key] = rhs[:cut] if cut >= 0 else rhs
    return out


def bracket_rows(label: str) -> list[tuple[str, str, str]]:
    """[(Xab, Xcd, rhs latex)] for a dual-algebra table."""
    body = _flatten(equation_body(label)).replace("\\qquad", " ")
    head = re.compile(r"\[\s*X_\{(\d\d)\}\s*,\s*X_\{(\d\d)\}\s*\]\s*&\s*=\s*&")
    marks = list(head.finditer(body))
    out = []
    for k, m in enumerate(marks):
        end = marks[k + 1].start() if k + 1 < len(marks) else len(body)
        out.append(("X" + m.group(1), "X" + m.group(2), body[m.end():end]))
    return out


_TOKEN = re.compile(r"\s*(sigma_tilde|exp|[A-Za-z_][A-Za-z_0-9]*|\d+|\(x\)|[-+*/^()])")


def latex_to_grammar(tex: str) -> str:
    s = tex
    s = re.sub(r"\\mbox\{\$([^$]*)\$\}", r" \1 ", s)
    s = s.replace("\\widetilde{\\sigma}", " sigma_tilde ")
    s = s.replace("\\sigma", " sigma ")
    for g, name in _GREEK.items():
        s = re.sub(r"\\%s(?![a-z])" % g, f" {name} ", s)
    s = re.sub(r"\\frac\{(\d+)\}\{(\d+)\}", r" (\1/\2) ", s)
    s = re.sub(r"\\frac\s*(\d)\s*(\d)", r" (\1/\2) ", s)
    s = re.sub(r"([EHX])_\{(\d\d)\}", r" \1\2 ", s)
    s = s.replace("\\otimes", " (x) ")
    s = re.sub(r"\\exp\s*\\\{", " exp( ", s)
    s = s.replace("\\}", " ) ")
    while re.search(r"e\^\{", s):
        s = re.sub(r"(?<![A-Za-z])e\^\{([^{}]*)\}", r" exp(\1) ", s)
    s = re.sub(r"(?<![A-Za-z])e\^(\w)", r" exp(\1) ", s)
    s = re.sub(r"\\[ ,;!]", " ", s)
    s = s.replace("&", " ")
    s = s.strip().rstrip(".,; ")
    toks = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot tokenize {s[pos:pos + 20]!r}")
        toks.append(m.group(1))
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    out = []
    for t in toks:
        if out:
            prev = out[-1]
            left = prev == ")" or re.fullmatch(r"\w+", prev) and prev != "exp"
            right = t == "(" or (re.fullmatch(r"\w+", t) and t != "(x)")
            if left and right and not (out[-2:-1] == ["^"]):
                out.append("*")
            elif left and right:
                out.append("*")
        out.append(t)
    text = " ".join(out)
    text = re.sub(r"\^ (\d+) \*", r"^\1 *", text)
    return text
