"""Entry point for ``python -m phspline``."""

from .main import app


def main() -> None:
    app(prog_name="phspline")


if __name__ == "__main__":
    main()
