from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from typing import Any

from cm_engine.core.errors import IllegalMove
from cm_engine.diagram.code import EmbeddingCode
from cm_engine.diagram.moves import crossing_change, legal_moves
from cm_engine.invariants.reports import invariant_digest

logger = logging.getLogger(__name__)


@dataclass
class CheckResult:
    baseline: dict[str, Any]
    applied: list[int] = field(default_factory=list)
    rejected: list[int] = field(default_factory=list)
    mismatch: dict[str, Any] | None = None
    mismatch_after: int | None = None

    @property
    def passed(self) -> bool:
        return self.mismatch is None


def check_invariance(
    code: EmbeddingCode,
    moves: int,
    seed: int,
    cap: int | None = None,
    workers: int | None = None,
    max_degree: int | None = None,
) -> CheckResult:
    """
    Apply `moves` random crossing changes and recompute the invariant digest
    after each one. Crossings between different components are drawn too;
    they are rejected and skipped, and do not count as moves.
    """
    rng = random.Random(seed)
    result = CheckResult(baseline=invariant_digest(code, cap, workers, max_degree))
    if not legal_moves(code):
        logger.info("no crossing lies within one component; nothing to change")
        return result

    current = code
    while len(result.applied) < moves:
        cid = rng.choice(current.crossings)
        try:
            current = crossing_change(current, cid)
        except IllegalMove as exc:
            logger.info("rejected move: %s", exc)
            result.rejected.append(cid)
            continue
        result.applied.append(cid)
        digest = invariant_digest(current, cap, workers, max_degree)
        if digest != result.baseline:
            result.mismatch = digest
            result.mismatch_after = len(result.applied)
            logger.warning("invariants changed after crossing change at %d", cid)
            break
    return result
