import logging
import sys
from typing import Optional, Sequence

from .cli import run
from .config import settings

# Configure logging
handlers = [logging.StreamHandler(sys.stderr)]  # Log to console, stdout stays for results
if settings.log_file:
    handlers.append(logging.FileHandler(settings.log_file))  # Log to file
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=handlers,
)
logger = logging.getLogger(__name__)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main entry point for the minimax-olo command line."""
    exit_code = run(argv)
    if exit_code:
        logger.error(f"minimax-olo finished with exit code {exit_code}")
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
