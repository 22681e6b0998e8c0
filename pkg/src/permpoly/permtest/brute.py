"""Exhaustive permutation test: evaluate everywhere and look for a repeated image."""

from concurrent.futures import ThreadPoolExecutor

import numpy as np
import structlog

from permpoly.errors import ResourceGuardError
from permpoly.fieldcore import FieldElement, FieldSpec, IntArray
from permpoly.permtest.base import Tester, resolve_field
from permpoly.permtest.registry import register_tester
from permpoly.polyring import SparsePoly, canonicalize, eval_many, eval_poly
from permpoly.schemas import Method, PermVerdict
from permpoly.settings import get_settings

logger = structlog.get_logger()

CHUNK = 1 << 16


def _images(p: SparsePoly, start: int, stop: int) -> IntArray:
    """Images of the consecutive elements start..stop-1."""
    if p.field.has_tables:
        return eval_many(p, np.arange(start, stop, dtype=np.int64))
    return np.fromiter((eval_poly(p, x) for x in range(start, stop)), dtype=np.int64, count=stop - start)


def _first_preimage(p: SparsePoly, image: FieldElement, stop: int) -> int:
    for start in range(0, stop, CHUNK):
        hits = np.flatnonzero(_images(p, start, min(start + CHUNK, stop)) == image)
        if hits.size:
            return start + int(hits[0])
    raise AssertionError("image has no preimage below its repeat")  # pragma: no cover


def is_pp_brute(p: SparsePoly, spec: FieldSpec | None = None, workers: int = 1) -> PermVerdict:
    """Evaluate p on all of F_q and report the first repeated image.

    Chunks are evaluated in parallel but marked in order, so the witness is always the
    smallest x2 that repeats an earlier image, paired with the first x1 hitting it.

    Args:
        p: Polynomial to test
        spec: Field (defaults to p's field)
        workers: Threads evaluating chunks

    Returns:
        PermVerdict; negatives carry a collision witness

    Raises:
        ResourceGuardError: If q exceeds 2^brute_max_degree
    """
    spec = resolve_field(p, spec)
    limit = get_settings().brute_max_degree
    if spec.n > limit:
        raise ResourceGuardError(f"Exhaustive test refused for q = 2^{spec.n} > 2^{limit}")

    p = canonicalize(p)
    q = spec.q
    seen = np.zeros(q, dtype=np.bool_)
    starts = range(0, q, CHUNK)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        chunks = executor.map(lambda s: _images(p, s, min(s + CHUNK, q)), starts)
        for start, images in zip(starts, chunks, strict=True):
            _, first_idx = np.unique(images, return_index=True)
            repeat = seen[images]
            repeat[np.setdiff1d(np.arange(images.size), first_idx, assume_unique=True)] = True
            if repeat.any():
                j = int(np.argmax(repeat))
                image = int(images[j])
                x2 = start + j
                x1 = _first_preimage(p, image, x2)
                witness = {
                    "kind": "collision",
                    "x1": spec.format(x1),
                    "x2": spec.format(x2),
                    "image": spec.format(image),
                }
                return PermVerdict(is_pp=False, method=Method.BRUTE, witness=witness)
            seen[images] = True

    return PermVerdict(is_pp=True, method=Method.BRUTE)


@register_tester
class BruteTester(Tester):
    """Exhaustive evaluation over the whole field."""

    name = "brute"
    description = "Evaluate at every element and look for a collision"

    def __init__(self, workers: int = 1) -> None:
        """Initialize brute tester.

        Args:
            workers: Threads evaluating chunks of the field
        """
        self.workers = workers

    def check(self, poly: SparsePoly | None, spec: FieldSpec) -> PermVerdict:
        """Run the exhaustive scan."""
        if poly is None:
            raise ValueError("brute needs a polynomial")
        return is_pp_brute(poly, spec, workers=self.workers)
