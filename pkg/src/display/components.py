"""
Reusable text components

This module provides the building blocks of text reports:
- Boxes with titles and content
- Tables with headers and rows
- Separators in various styles
- A pass-ratio bar for check summaries
"""

from typing import List


def render_ratio_bar(passed: int, total: int, width: int = 20) -> str:
    """
    Render the share of passed checks with block characters.

    Examples:
        >>> render_ratio_bar(5, 10, 10)
        '█████░░░░░'
        >>> render_ratio_bar(0, 0, 4)
        '░░░░'
    """
    if total == 0:
        return "░" * width
    filled = max(0, min(int(passed / total * width), width))
    return "█" * filled + "░" * (width - filled)


def render_box(content: str, title: str = "", width: int = 72) -> str:
    """
    Render content inside a box with optional title.

    Lines longer than the box are wrapped, not truncated, so formulas
    stay complete.

    Examples:
        >>> print(render_box("L = 0", "derive", 20))
        ╔═══ derive ═══════╗
        ║ L = 0            ║
        ╚══════════════════╝
    """
    inner = width - 4
    if title:
        title_part = f"═══ {title} "
        top = "╔" + title_part + "═" * max(0, width - len(title_part) - 2) + "╗"
    else:
        top = "╔" + "═" * (width - 2) + "╗"
    lines = [top]
    for line in content.split("\n"):
        chunks = [line[i:i + inner] for i in range(0, len(line), inner)] or [""]
        for chunk in chunks:
            lines.append(f"║ {chunk.ljust(inner)} ║")
    lines.append("╚" + "═" * (width - 2) + "╝")
    return "\n".join(lines)


def render_table(headers: List[str], rows: List[List[str]]) -> str:
    """
    Render a table with headers and rows.

    Examples:
        >>> print(render_table(["check", "verdict"], [["dJ", "pass"]]))
        ┌───────┬─────────┐
        │ check │ verdict │
        ├───────┼─────────┤
        │ dJ    │ pass    │
        └───────┴─────────┘
    """
    if not headers:
        return ""
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row[:len(widths)]):
            widths[i] = max(widths[i], len(str(cell)))

    def border(left: str, mid: str, right: str) -> str:
        return left + mid.join("─" * (w + 2) for w in widths) + right

    lines = [border("┌", "┬", "┐")]
    lines.append("│" + "│".join(f" {h.ljust(w)} " for h, w in zip(headers, widths)) + "│")
    lines.append(border("├", "┼", "┤"))
    for row in rows:
        cells = [str(row[i]) if i < len(row) else "" for i in range(len(headers))]
        lines.append("│" + "│".join(f" {c.ljust(w)} " for c, w in zip(cells, widths)) + "│")
    lines.append(border("└", "┴", "┘"))
    return "\n".join(lines)


def render_separator(width: int, style: str = "single") -> str:
    """
    Render a horizontal separator line.

    Examples:
        >>> render_separator(5, "double")
        '═════'
    """
    styles = {"single": "─", "double": "═", "heavy": "━", "dotted": "┄"}
    return styles.get(style, "─") * width
