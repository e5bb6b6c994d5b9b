"""
Triple Scorer - Main Entry Point

    python main.py prepare --triples profession.train --sentences sentences.tsv
    python main.py train --epochs 20
    python main.py score --method cossim --mapping lin
    python main.py eval --gold profession.gold
"""

import os
import sys

# Add project root to path first
sys.path.insert(0, os.path.dirname(__file__))

try:
    if hasattr(sys.stderr, 'reconfigure'):
        sys.stderr.reconfigure(encoding='utf-8', errors='replace')
    if hasattr(sys.stdout, 'reconfigure'):
        sys.stdout.reconfigure(encoding='utf-8', errors='replace')
except (AttributeError, OSError):
    pass

# Load .env before the logger so TRIPLE_SCORER_LOG_DIR and ${VAR} config values are visible
try:
    from dotenv import load_dotenv
    env_path = os.path.join(os.path.dirname(__file__), '.env')
    if os.path.exists(env_path):
        load_dotenv(env_path, override=False)
    else:
        load_dotenv(override=False)
except ImportError:
    print("[WARN] python-dotenv not installed. Using environment variables only.", file=sys.stderr)

from utils.logger import setup_logger
logger = setup_logger("main")

from cli import main as cli_main


def main() -> int:
    """Main entry point"""
    try:
        return cli_main()
    except KeyboardInterrupt:
        logger.info("[STOP] Interrupted by user")
        return 130


if __name__ == '__main__':
    sys.exit(main())
