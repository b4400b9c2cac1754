"""Bundled example trees."""
from importlib.resources import files


def tree_text(name: str) -> str:
    return files(__name__).joinpath(f"{name}.tree").read_text()


def names() -> list[str]:
    return sorted(p.name[:-5] for p in files(__name__).iterdir() if p.name.endswith(".tree"))
