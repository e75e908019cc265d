"""
JSON codecs for scalars and domain elements.

Scalars are {"num": [...], "den": [...]} with coefficient lists lowest degree first;
each coefficient is a quadruple of integer strings [re_p, re_q, im_p, im_q].
Input also accepts plain integers and "p/q" strings for parameter-free scalars.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from quantization.domain.disc import HBAR, CnPolynomial, DiscElement, DiscIndex
from quantization.domain.enveloping import UEAElement
from quantization.domain.errors import InputError, WorkbenchError
from quantization.domain.lie import LieStructure
from quantization.domain.scalars import RationalFunction, dense_coefficients, gaussian, gaussian_parts
from quantization.domain.symmetric import SymElement
from quantization.domain.weyl import BilinearForm


# Scalars

def _encode_coefficient(value) -> list[str]:
    real, imag = gaussian_parts(value)
    return [str(real.numerator), str(real.denominator), str(imag.numerator), str(imag.denominator)]


def _decode_coefficient(raw) -> Any:
    if isinstance(raw, (list, tuple)) and len(raw) == 4:
        try:
            re_p, re_q, im_p, im_q = (int(x) for x in raw)
            return gaussian(Fraction(re_p, re_q), Fraction(im_p, im_q))
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"Malformed scalar coefficient {raw!r}") from exc
    return gaussian(_decode_rational(raw))


def _decode_rational(raw) -> Fraction:
    if isinstance(raw, bool):
        raise InputError("Booleans are not scalars")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"Malformed rational {raw!r}") from exc
    raise InputError(f"Unsupported scalar literal {raw!r}")


def encode_scalar(value: RationalFunction) -> dict:
    return {
        "num": [_encode_coefficient(c) for c in dense_coefficients(value.numer)],
        "den": [_encode_coefficient(c) for c in dense_coefficients(value.denom)],
    }


def decode_scalar(raw) -> RationalFunction:
    if isinstance(raw, dict):
        if "num" not in raw:
            raise InputError("Scalar object needs a 'num' list", details={"keys": sorted(raw)})
        numer = [_decode_coefficient(c) for c in raw["num"]]
        denom = [_decode_coefficient(c) for c in raw.get("den", [[1, 1, 0, 1]])]
        if not any(denom):
            raise InputError("Scalar denominator is zero")
        return RationalFunction.from_coefficients(numer, denom)
    return RationalFunction.constant(_decode_coefficient(raw))


# Elements

def _terms(raw: dict, kind: str) -> list:
    terms = raw.get("terms")
    if not isinstance(terms, list):
        raise InputError(f"{kind} needs a 'terms' list")
    return terms


def encode_sym(element: SymElement) -> dict:
    return {
        "kind": element.kind,
        "dim": element.dim,
        "param": element.param,
        "terms": [{"idx": list(index), "coeff": encode_scalar(c)} for index, c in element.sorted_items()],
    }


def decode_sym(raw: dict) -> SymElement:
    try:
        dim = int(raw["dim"])
        return SymElement(
            dim,
            [(term["idx"], decode_scalar(term["coeff"])) for term in _terms(raw, "Symmetric element")],
            param=raw.get("param", "z"),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Malformed symmetric element: {exc}") from exc


def encode_uea(element: UEAElement) -> dict:
    data = encode_sym(SymElement._from_clean(element.dim, element.terms, element.param))
    data["kind"] = element.kind
    data["basis"] = "pbw"
    return data


def decode_uea(raw: dict) -> UEAElement:
    if raw.get("basis", "pbw") != "pbw":
        raise InputError("Only the PBW basis is supported", details={"basis": raw.get("basis")})
    sym = decode_sym(raw)
    return UEAElement._from_clean(sym.dim, sym.terms, sym.param)


def encode_form(form: BilinearForm) -> list:
    return [[encode_scalar(x) for x in row] for row in form.matrix]


def decode_form(raw) -> BilinearForm:
    if isinstance(raw, dict):
        if raw.get("kind") == "symplectic":
            return BilinearForm.symplectic(int(raw["dim"]))
        if raw.get("kind") == "wick":
            return BilinearForm.wick(int(raw["n"]))
        raw = raw.get("matrix")
    if not isinstance(raw, list) or not all(isinstance(row, list) for row in raw):
        raise InputError("Bilinear form must be a row-major matrix")
    try:
        return BilinearForm([[decode_scalar(x) for x in row] for row in raw])
    except WorkbenchError as exc:
        raise InputError(exc.message, details=exc.details) from exc


def encode_lie(lie: LieStructure) -> dict:
    """Brackets listed for i < j with 1-based basis labels."""
    return {
        "kind": "lie-structure",
        "name": lie.name,
        "dim": lie.dim,
        "brackets": [
            {"i": i + 1, "j": j + 1, "coeffs": [encode_scalar(c) for c in coeffs]}
            for (i, j), coeffs in sorted(lie.brackets().items())
        ],
    }


def decode_lie(raw: dict) -> LieStructure:
    try:
        dim = int(raw["dim"])
        brackets = {}
        for entry in raw.get("brackets", []):
            key = (int(entry["i"]) - 1, int(entry["j"]) - 1)
            brackets[key] = [decode_scalar(c) for c in entry["coeffs"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Malformed Lie structure: {exc}") from exc
    try:
        return LieStructure(dim, brackets, name=raw.get("name", ""))
    except WorkbenchError as exc:
        raise InputError(exc.message, code=exc.code, details=exc.details) from exc


def encode_cn(element: CnPolynomial) -> dict:
    return {
        "kind": element.kind,
        "n": element.n,
        "invariant": element.is_invariant,
        "terms": [{"P": list(p), "Q": list(q), "coeff": encode_scalar(c)} for (p, q), c in element.sorted_items()],
    }


def decode_cn(raw: dict) -> CnPolynomial:
    try:
        return CnPolynomial(
            int(raw["n"]),
            [((term["P"], term["Q"]), decode_scalar(term["coeff"])) for term in _terms(raw, "Polynomial")],
            param=HBAR,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Malformed polynomial: {exc}") from exc


def encode_disc(element: DiscElement) -> dict:
    return {
        "kind": element.kind,
        "n": element.n,
        "terms": [
            {"P": list(index.P), "Q": list(index.Q), "coeff": encode_scalar(c)} for index, c in element.sorted_items()
        ],
    }


def decode_disc(raw: dict) -> DiscElement:
    try:
        return DiscElement(
            int(raw["n"]),
            [(DiscIndex.of(term["P"], term["Q"]), decode_scalar(term["coeff"])) for term in _terms(raw, "Disc element")],
            param=HBAR,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Malformed disc element: {exc}") from exc


ENCODERS = {
    SymElement: encode_sym,
    UEAElement: encode_uea,
    CnPolynomial: encode_cn,
    DiscElement: encode_disc,
    LieStructure: encode_lie,
}

DECODERS = {
    "sym-element": decode_sym,
    "uea-element": decode_uea,
    "cn-polynomial": decode_cn,
    "disc-element": decode_disc,
    "lie-structure": decode_lie,
}


def encode(value) -> Any:
    encoder = ENCODERS.get(type(value))
    if encoder is not None:
        return encoder(value)
    if isinstance(value, BilinearForm):
        return encode_form(value)
    if isinstance(value, RationalFunction):
        return encode_scalar(value)
    raise TypeError(f"No JSON codec for {type(value).__name__}")


def decode(raw: dict, kind: str | None = None):
    kind = kind or (raw.get("kind") if isinstance(raw, dict) else None)
    decoder = DECODERS.get(kind)
    if decoder is None:
        raise InputError(f"Unknown element kind: {kind}", details={"known": sorted(DECODERS)})
    return decoder(raw)


def canonical_json(data: Any) -> str:
    """Sorted keys, fixed separators: identical data gives identical bytes."""
    return json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputError(f"Cannot read {path}: {exc.strerror}", details={"path": str(path)}) from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"Invalid JSON in {path}: {exc.msg}", details={"path": str(path), "line": exc.lineno}) from exc
