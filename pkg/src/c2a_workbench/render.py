"""Text and Graphviz renderings of a classified submodule lattice."""

from __future__ import annotations

from .classify import classify_all, hasse_parents
from .module import enumerate_submodules

# fill colour by strongest property held (classical prime => c2a, 2-absorbing => c2a)
COLORS = {
    "classical_prime": "palegreen",
    "two_absorbing": "lightblue",
    "classical_2_absorbing": "khaki",
}


def _category(flags: dict | None) -> str | None:
    if not flags or not flags["classical_2_absorbing"]:
        return None
    if flags["classical_prime"]:
        return "classical_prime"
    if flags["two_absorbing"]:
        return "two_absorbing"
    return "classical_2_absorbing"


def lattice_report(m, records=None) -> dict:
    subs = enumerate_submodules(m)
    records = records if records is not None else classify_all(m)
    return {
        "module": m.to_json(),
        "lattice": [
            {"index": i, "label": s.label(), "proper": s.is_proper, "covers": p}
            for i, (s, p) in enumerate(zip(subs, hasse_parents(subs)))
        ],
        "records": [r.to_json() for r in records],
    }


def to_dot(m, records=None) -> str:
    subs = enumerate_submodules(m)
    records = records if records is not None else classify_all(m)
    flags = {r.index: r.flags for r in records}
    lines = [f'digraph "{m}" {{', "  rankdir=BT;", '  node [shape=box, style=filled, fillcolor=white];']
    for i, s in enumerate(subs):
        cat = _category(flags.get(i))
        marks = []
        if i in flags:
            f = flags[i]
            marks = [tag for tag, key in (("P", "prime"), ("CP", "classical_prime"),
                                          ("2A", "two_absorbing"), ("C2A", "classical_2_absorbing")) if f[key]]
        label = s.label() + (("\\n" + " ".join(marks)) if marks else "")
        color = f", fillcolor={COLORS[cat]}" if cat else ""
        lines.append(f'  n{i} [label="{label}"{color}];')
    for i, parents in enumerate(hasse_parents(subs)):
        for j in parents:
            lines.append(f"  n{i} -> n{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_text(m, records=None) -> str:
    records = records if records is not None else classify_all(m)
    rows = [f"module {m} over {m.ring}"]
    for r in records:
        f = r.flags
        cells = " ".join(f"{k}={'y' if f[k] else 'n'}" for k in ("prime", "classical_prime", "two_absorbing",
                                                                     "classical_2_absorbing"))
        nabs = ",".join(str(k) for k, v in f["n_absorbing"].items() if v)
        rows.append(f"  {r.submodule.label():<16} {cells} n_absorbing={{{nabs}}}")
    return "\n".join(rows) + "\n"
