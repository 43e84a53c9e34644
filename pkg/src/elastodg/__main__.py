"""Main entry point for the elastodg package."""

from . import main

if __name__ == "__main__":
    main()
