"""Deterministic CSV/JSON/SVG emission for experiment reports.

Every CSV starts with a schema string on row 1 and a header on row 2.
Floats are written with repr (shortest round-trip), so identical configs
produce byte-identical files.
"""

import hashlib
import json
import os


def _format(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(path, schema, header, rows):
    """Write rows (dicts keyed by header names) under a schema line."""
    lines = [f"# schema={schema}", ",".join(header)]
    for row in rows:
        lines.append(",".join(_format(row.get(col, "")) for col in header))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def file_sha256(path):
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        digest.update(fh.read())
    return digest.hexdigest()


def write_manifest(out_dir, payload):
    """Write the single manifest.json for an output directory."""
    path = os.path.join(out_dir, "manifest.json")
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def write_field_dump(path_base, field, sidecar):
    """Raw little-endian float64 dump plus a JSON sidecar."""
    raw_path = path_base + ".f64"
    field.values.astype("<f8").tofile(raw_path)
    with open(path_base + ".json", "w") as fh:
        json.dump(sidecar, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return raw_path


def write_svg_lines(path, series, title="", width=640, height=400):
    """Minimal static SVG line chart: series is {label: (xs, ys)}."""
    margin = 50.0
    xs_all = [x for xs, _ in series.values() for x in xs]
    ys_all = [y for _, ys in series.values() for y in ys]
    if not xs_all:
        xs_all = ys_all = [0.0, 1.0]
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    x1 = x1 if x1 > x0 else x0 + 1.0
    y1 = y1 if y1 > y0 else y0 + 1.0

    def sx(x):
        return margin + (x - x0) / (x1 - x0) * (width - 2 * margin)

    def sy(y):
        return height - margin - (y - y0) / (y1 - y0) * (height - 2 * margin)

    colors = ["black", "blue", "red", "green", "orange", "purple"]
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2}" y="20" text-anchor="middle">{title}</text>',
    ]
    for i, (label, (xs, ys)) in enumerate(sorted(series.items())):
        color = colors[i % len(colors)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
        parts.append(
            f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>'
        )
        parts.append(
            f'<text x="{width - margin + 4}" y="{30 + 14 * i}" fill="{color}" '
            f'font-size="11">{label}</text>'
        )
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
