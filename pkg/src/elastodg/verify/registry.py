"""Registry of executable property checks."""

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence

logger = logging.getLogger("elastodg")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    description: str
    run: Callable[[], CheckResult]


# Global check registry
_registry: Optional[Dict[str, VerifyCheck]] = None


def get_checks() -> Dict[str, VerifyCheck]:
    """Get or create the global check registry.

    Returns:
        Dict[str, VerifyCheck]: Registered checks by name
    """
    global _registry
    if _registry is None:
        from .checks import CHECKS

        _registry = dict(CHECKS)
    return _registry


def register_check(check: VerifyCheck) -> None:
    """Register a new check, replacing any check of the same name.

    Args:
        check (VerifyCheck): The check to register
    """
    get_checks()[check.name] = check


def run_checks(names: Optional[Sequence[str]] = None) -> List[CheckResult]:
    """Run the named checks (all by default) in registration order.

    Raises:
        ValueError: If a check name is not registered
    """
    checks = get_checks()
    selected = list(checks) if not names else list(names)
    results = []
    for name in selected:
        if name not in checks:
            raise ValueError(f"Check not found: {name}")
        try:
            result = checks[name].run()
        except Exception as e:
            logger.exception(f"Check {name} raised")
            result = CheckResult(name, False, f"raised {type(e).__name__}: {e}")
        logger.info(f"{'PASS' if result.passed else 'FAIL'} {name}: {result.detail}")
        results.append(result)
    return results
