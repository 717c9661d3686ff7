from pathlib import Path
from typing import Optional, Union

import typer
import yaml

from .cli.arclength import arclength
from .cli.construct import construct
from .cli.hermite import hermite
from .cli.offset import offset
from .cli.selftest import selftest
from .common.settings import numerics
from .models.base import PHSplineConfig

app = typer.Typer(help="PH B-spline curves: construction, arc length, offsets and G2 Hermite interpolation")


def load_config(path: Union[Path, str] = Path("config/default.yml")) -> PHSplineConfig:
    """Load a numerics YAML file into the validated config model."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(path)
    with path.open("r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh) or {}
    return PHSplineConfig(**data)


@app.callback()
def main(
    config: Optional[Path] = typer.Option(None, "--config", help="Alternate numerics YAML"),
) -> None:
    """Shared options; --config is validated before any command runs."""
    if config is not None:
        try:
            load_config(config)
        except FileNotFoundError:
            typer.echo(f"error: config file not found: {config}", err=True)
            raise typer.Exit(2)
        except Exception as exc:
            typer.echo(f"error: invalid config {config}: {exc}", err=True)
            raise typer.Exit(2)
        numerics.reload(config)


app.command("construct")(construct)
app.command("offset")(offset)
app.command("arclength")(arclength)
app.command("hermite")(hermite)
app.command("selftest")(selftest)


__all__ = ["app", "load_config", "PHSplineConfig"]
