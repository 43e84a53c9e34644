"""Executable property checks behind the ``verify`` command."""

from .registry import CheckResult, VerifyCheck, get_checks, register_check, run_checks

__all__ = ["CheckResult", "VerifyCheck", "get_checks", "register_check", "run_checks"]
