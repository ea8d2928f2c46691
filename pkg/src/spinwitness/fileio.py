"""QDM density-matrix files and deterministic JSON reports.

QDM layout::

    QDM 1 <N>
    <row> <col> <re> <im>      (4^N lines, row-major, 0-based)

Lines starting with ``#`` are comments. Floats are written with 17
significant digits so binary64 values survive the round trip.
"""

import hashlib
import json
import math

import numpy as np

from .qmat import nqubits

QDM_VERSION = 1
DEFAULT_TOL = 1e-6


class ParseError(ValueError):
    def __init__(self, msg, path=None, line=None):
        self.path, self.line = path, line
        where = f"{path}:{line}: " if line is not None else (f"{path}: " if path else "")
        super().__init__(where + msg)


def _fmt(x):
    return "%.17g" % x


def format_qdm(rho):
    rho = np.asarray(rho, dtype=complex)
    n = nqubits(rho.shape[0])
    lines = [f"QDM {QDM_VERSION} {n}"]
    dim = rho.shape[0]
    for r in range(dim):
        for c in range(dim):
            z = rho[r, c]
            lines.append(f"{r} {c} {_fmt(z.real)} {_fmt(z.imag)}")
    return "\n".join(lines) + "\n"


def write_qdm(rho, path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_qdm(rho))


def parse_qdm_text(text, tol=DEFAULT_TOL, path=None):
    """Parse QDM text; Hermiticity and trace are checked against ``tol``.

    A trace off by more than round-off but within ``tol`` is renormalised.
    """
    header = None
    rho = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 3 or parts[0] != "QDM":
                raise ParseError("expected header 'QDM 1 <N>'", path, lineno)
            if parts[1] != str(QDM_VERSION):
                raise ParseError(f"unsupported QDM version {parts[1]!r}", path, lineno)
            try:
                n = int(parts[2])
            except ValueError:
                raise ParseError(f"bad qubit count {parts[2]!r}", path, lineno) from None
            if not 1 <= n <= 12:
                raise ParseError(f"qubit count {n} outside 1..12", path, lineno)
            header = n
            dim = 2**n
            rho = np.zeros((dim, dim), dtype=complex)
            expect = 0
            continue
        if len(parts) != 4:
            raise ParseError(f"expected 4 fields, got {len(parts)}", path, lineno)
        try:
            r, c = int(parts[0]), int(parts[1])
            re, im = float(parts[2]), float(parts[3])
        except ValueError:
            raise ParseError(f"cannot parse entry {line!r}", path, lineno) from None
        if not (math.isfinite(re) and math.isfinite(im)):
            raise ParseError("non-finite value", path, lineno)
        if expect >= dim * dim:
            raise ParseError("more than 4^N entries", path, lineno)
        if (r, c) != divmod(expect, dim):
            er, ec = divmod(expect, dim)
            raise ParseError(f"expected entry ({er}, {ec}), got ({r}, {c})", path, lineno)
        rho[r, c] = complex(re, im)
        expect += 1
    if header is None:
        raise ParseError("missing header", path, 1)
    if expect != rho.size:
        er, ec = divmod(expect, rho.shape[0])
        raise ParseError(
            f"file ends after {expect} of {rho.size} entries, missing ({er}, {ec})",
            path, lineno + 1,
        )
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > tol:
        raise ParseError(f"matrix is not Hermitian (deviation {herm:.3g} > {tol:g})", path)
    tr = np.trace(rho)
    if abs(tr - 1) > tol:
        raise ParseError(f"trace {tr.real:.12g} differs from 1 by more than {tol:g}", path)
    if abs(tr - 1) > 1e-12:
        rho = rho / tr.real
    return rho


def parse_qdm(path, tol=DEFAULT_TOL):
    with open(path, encoding="utf-8") as fh:
        return parse_qdm_text(fh.read(), tol, path=str(path))


def sha256_file(path):
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def sha256_matrix(rho):
    return hashlib.sha256(format_qdm(rho).encode()).hexdigest()


# --------------------------------------------------------------------------- #
# JSON                                                                        #
# --------------------------------------------------------------------------- #


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        return "null" if obj is None else ("true" if obj else "false")
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialise non-finite number {x}")
        return _fmt(x)
    if isinstance(obj, (complex, np.complexfloating)):
        return _encode({"re": obj.real, "im": obj.imag}, indent, level)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, np.ndarray):
        return _encode(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float, np.number, bool)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "as_dict"):
        return _encode(obj.as_dict(), indent, level)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj, indent=2):
    """JSON text with insertion-ordered keys and 17 significant digits per float."""
    return _encode(obj, indent, 0) + "\n"
