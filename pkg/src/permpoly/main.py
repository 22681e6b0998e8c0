"""Main entry point for permpoly."""

from permpoly.cli import app


def main() -> None:
    """Run the permpoly CLI."""
    app()


if __name__ == "__main__":
    main()
