"""Runtime settings for the elastodg solver."""

import sys
from pydantic_settings import BaseSettings, SettingsConfigDict
from pathlib import Path
import logging

logger = logging.getLogger("elastodg")


class Settings(BaseSettings):
    """Process-level solver settings, read from the environment or a .env file."""

    APP_NAME: str = "elastodg"
    APP_VERSION: str = "0.3.0"
    SOLVER_THREADS: int = 1
    ELEMENT_BLOCK: int = 64
    ENERGY_EVERY: int = 10
    LOG_LEVEL: str = "INFO"
    model_config = SettingsConfigDict(env_file=".env", extra="allow")

    @property
    def OUTPUT_ROOT(self) -> Path:
        """Get the resolved default output directory and ensure it exists.

        Returns:
            Path: The absolute output directory.
        """
        path = self._get_output_dir_from_args() or Path.cwd() / "elastodg-output"
        path = path.resolve()
        path.mkdir(parents=True, exist_ok=True)
        return path

    @property
    def threads(self) -> int:
        """Worker thread count, never below one."""
        if self.SOLVER_THREADS < 1:
            logger.warning(
                f"SOLVER_THREADS={self.SOLVER_THREADS} is not positive, using 1"
            )
            return 1
        return self.SOLVER_THREADS

    def _get_output_dir_from_args(self) -> Path | None:
        """Extract an output directory override from command line arguments.

        Returns:
            Path | None: The directory if given via --output-dir, None otherwise.
        """
        args = sys.argv[1:]
        try:
            index = args.index("--output-dir")
        except ValueError:
            return None

        if index + 1 >= len(args):
            return None

        try:
            return Path(args[index + 1]).resolve()
        except (TypeError, ValueError) as e:
            logger.warning(f"Invalid output directory format: {e}")
        except OSError as e:
            logger.warning(f"Invalid output directory: {e}")

        return None
