import os
import sys
import io

# Fix Windows console encoding for emojis
if sys.platform == 'win32':
    sys.stdout = io.TextIOWrapper(sys.stdout.buffer, encoding='utf-8', errors='replace')
    sys.stderr = io.TextIOWrapper(sys.stderr.buffer, encoding='utf-8', errors='replace')

import time

# Add BASE_DIR to sys.path so we can import cm_engine
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(BASE_DIR)

from cm_engine.core.config import CHECK_MOVES, CHECK_SEED
from cm_engine.core.errors import CMError
from cm_engine.corpus import list_fixtures, load_code
from cm_engine.invariants import check_invariance, lambda_report


def check_fixture(name: str, moves: int, seed: int) -> bool:
    """Move invariance and route agreement for one diagram fixture."""
    print(f"🔄 {name}: {moves} moves (seed {seed}) ...", end=" ", flush=True)
    started = time.perf_counter()
    code = load_code(name)

    result = check_invariance(code, moves, seed)
    if not result.passed:
        print(f"❌ invariants changed after move {result.mismatch_after}.")
        return False

    report = lambda_report(code)
    if not report.agree:
        print("❌ lambda routes disagree.")
        return False

    lam = ", ".join(
        f"{r.color}:{r.value if r.value is not None else '-'}" for r in report.rows
    )
    took = time.perf_counter() - started
    print(f"✅ {len(result.applied)} applied, {len(result.rejected)} rejected, λ {lam} ({took:.2f}s)")
    return True


def check_corpus(moves: int = CHECK_MOVES, seed: int = CHECK_SEED) -> int:
    print("🚀 STARTING CORPUS INVARIANCE SWEEP...")
    print("=" * 60)

    failures = []
    for name in list_fixtures("diagram"):
        try:
            if not check_fixture(name, moves, seed):
                failures.append(name)
        except CMError as e:
            print(f"❌ {e}")
            failures.append(name)

    print("=" * 60)
    if failures:
        print(f"❌ FAILED: {', '.join(failures)}")
        return 1
    print(f"🏆 COMPLETE: {len(list_fixtures('diagram'))} fixtures invariant.")
    return 0


if __name__ == "__main__":
    try:
        sys.exit(check_corpus())
    except Exception as e:
        print(f"\n❌ CRITICAL CRASH: {e}")
        sys.exit(3)
