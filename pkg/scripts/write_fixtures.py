"""Regenerate the shipped fixture files from the embedded copies."""

import json
from pathlib import Path

from anglemethod import fixtures

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    OUT.mkdir(exist_ok=True)
    systems = {
        "fig1": fixtures.fig1_system(),
        "fig1_mixed": fixtures.fig1_system(fixtures.FIG1_MIXED_KINDS),
        "fig3a": fixtures.fig3a_system(),
        "fig3b": fixtures.fig3b_system(),
    }
    for name, system in systems.items():
        (OUT / f"{name}.json").write_text(json.dumps(system.to_json(), indent=2) + "\n")
    (OUT / "figure4.txt").write_text(fixtures.figure4_text())
    print(f"wrote {len(systems) + 1} files to {OUT}")


if __name__ == "__main__":
    main()
