"""
Stable fingerprints for polynomials and report payloads.
FNV-1a 64-bit in pure Python, so fingerprints agree across interpreters and
platforms; used to check that repeated runs produce identical output.
"""
import json
from typing import Any

FNV_64_OFFSET = 14695981039346656037
FNV_64_PRIME = 1099511628211


def fnv1a_64(data: bytes) -> int:
    """Compute 64-bit FNV-1a hash of the given bytes."""
    h = FNV_64_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_64_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def stable_hash_text(text: str) -> str:
    """Return a stable 64-bit hex digest for text (UTF-8)."""
    return f"{fnv1a_64(text.encode('utf-8')):016x}"


def fingerprint_polynomial(f) -> str:
    """Digest of the canonical printed form together with the variable list.

    The variable list is part of the key: ``x^2`` over ``[x, y]`` and over
    ``[x]`` are different objects.
    """
    sep = "\x1f"  # Unit Separator
    return stable_hash_text(sep.join(list(f.variables) + [str(f)]))


def fingerprint_payload(payload: Any) -> str:
    """Digest of a JSON-serialisable payload in canonical form (sorted keys)."""
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"), default=str)
    return stable_hash_text(text)
