"""Loader for the worked PRM_5(3,4) example shipped in ``data/fig3``.

The text files keep the layout of the printed figure so they can be checked
by eye; this module turns them into words in canonical point order,
polynomials and syndrome dictionaries.
"""

from __future__ import annotations

import hashlib
from importlib import resources

import numpy as np

from .codes import CodeSpec, prm_params
from .galois import gf
from .monomials import Polynomial, parse_polynomial

SYMBOLS = {"0": 0, "1": 1, "a": 2, "b": 3}
FILES = ("information.txt", "codeword.txt", "received.txt", "error_printed.txt", "syndrome_psi0.txt", "groebner.txt")


def _read(name: str) -> dict[str, list[str]]:
    text = resources.files("prmcodes").joinpath("data").joinpath("fig3").joinpath(name).read_text()
    sections: dict[str, list[str]] = {}
    current = None
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("["):
            current = line.strip("[]")
            sections[current] = []
        else:
            sections[current].append(line)
    return sections


def _cells(line: str) -> list[str]:
    return line.replace("|", " ").split()


def example_spec() -> CodeSpec:
    return prm_params(3, gf(4), 5)


def load_word(name: str) -> np.ndarray:
    """A figure word (codeword, received or error) in canonical order."""
    sec = _read(name)
    word = np.zeros(85, dtype=np.uint8)
    for w2, line in enumerate(sec["psi0"]):
        cells = _cells(line)
        for w3 in range(4):
            for w1 in range(4):
                word[w1 * 16 + w2 * 4 + w3] = SYMBOLS[cells[4 * w3 + w1]]
    for w3, line in enumerate(sec["psi1"]):
        for w2, c in enumerate(_cells(line)):
            word[64 + w2 * 4 + w3] = SYMBOLS[c]
    for w3, line in enumerate(sec["psi2"]):
        word[80 + w3] = SYMBOLS[_cells(line)[0]]
    word[84] = SYMBOLS[_cells(sec["psi3"][0])[0]]
    return word


def codeword() -> np.ndarray:
    return load_word("codeword.txt")


def received() -> np.ndarray:
    return load_word("received.txt")


def printed_error() -> np.ndarray:
    return load_word("error_printed.txt")


def information_polynomial() -> Polynomial:
    sec = _read("information.txt")
    field = gf(4)
    terms = {}
    for a2, line in enumerate(sec["B0"]):
        cells = _cells(line)
        for a3 in range(4):
            for a1 in range(4):
                c = cells[4 * a3 + a1]
                if c != ".":
                    terms[(5 - a1 - a2 - a3, a1, a2, a3)] = SYMBOLS[c]
    for a3, line in enumerate(sec["B1"]):
        for a2, c in enumerate(_cells(line)):
            if c != ".":
                terms[(0, 5 - a2 - a3, a2, a3)] = SYMBOLS[c]
    for a3, line in enumerate(sec["B2"]):
        terms[(0, 0, 5 - a3, a3)] = SYMBOLS[_cells(line)[0]]
    terms[(0, 0, 0, 5)] = SYMBOLS[_cells(sec["B3"][0])[0]]
    return Polynomial(field, 4, terms, offset=0)


def syndrome_table() -> tuple[dict, dict]:
    """(known, full): the marked degree <= 3 cells and the whole extension,
    both keyed by exponent tuples (a1, a2, a3)."""
    sec = _read("syndrome_psi0.txt")
    known, full = {}, {}
    for a2, line in enumerate(sec["psi0"]):
        cells = _cells(line)
        for a3 in range(4):
            for a1 in range(4):
                c = cells[4 * a3 + a1]
                v = SYMBOLS[c.rstrip("*")]
                full[(a1, a2, a3)] = v
                if c.endswith("*"):
                    known[(a1, a2, a3)] = v
    return known, full


def groebner_bases() -> dict[str, list[Polynomial]]:
    sec = _read("groebner.txt")
    field = gf(4)
    return {
        "G0": [parse_polynomial(t, field, 3, offset=1) for t in sec["G0"]],
        "G1": [parse_polynomial(t, field, 2, offset=2) for t in sec["G1"]],
    }


def fixture_hash() -> str:
    h = hashlib.sha256()
    for name in FILES:
        h.update(resources.files("prmcodes").joinpath("data").joinpath("fig3").joinpath(name).read_bytes())
    return h.hexdigest()[:12]
