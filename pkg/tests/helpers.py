import re

_DIGIT = re.compile(r"(?<![\w])([01])(?![\w])")


def swap(label):
    """Exchange process indices 0 and 1 in a label text."""
    return _DIGIT.sub(lambda m: "1" if m.group(1) == "0" else "0", label)


def equal_up_to_swap(got, want):
    return list(got) == list(want) or [swap(x) for x in got] == list(want)
