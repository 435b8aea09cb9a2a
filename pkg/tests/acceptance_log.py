"""One PASS/FAIL line per acceptance criterion, collected while the suite runs."""
LINES: list[str] = []


def record(label: str, ok: bool, detail: str = "") -> bool:
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
    LINES.append(line)
    print(line)
    return ok
