"""Line-based structure files and DOT export.

File format, one directive per line::

    frame NAME        # starts a block (also: model NAME, structure NAME)
    world w0          # declares a world; worlds must be declared before use
    rel a w0 w1       # pair (w0, w1) in the relation labelled a
    prop p w0         # proposition p true at w0
    urel P w0         # unary relation P holds of w0 (FO structures)

A block containing ``urel`` lines, or headed ``structure``, is read as an
:class:`FOStructure`; otherwise a block with ``prop`` lines (or headed
``model``) is a :class:`Model`, and anything else a :class:`Frame`.
"""

from ..errors import ParseError, StructureError
from ..syntax.modal import UNIVERSAL
from .structures import FOStructure, Frame, Model


def parse_structures(text):
    blocks = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip() if not raw.lstrip().startswith("#") else ""
        if not line:
            continue
        parts = line.split()
        head = parts[0]
        if head in ("frame", "model", "structure"):
            if len(parts) != 2:
                raise ParseError(f"expected '{head} NAME'", lineno, 1)
            current = {"kind": head, "name": parts[1], "worlds": [], "index": {},
                       "rel": {}, "prop": {}, "urel": {}}
            blocks.append(current)
            continue
        if current is None:
            raise ParseError("directive before any 'frame' header", lineno, 1)
        if head == "world":
            if len(parts) != 2:
                raise ParseError("expected 'world NAME'", lineno, 1)
            if parts[1] in current["index"]:
                raise ParseError(f"world {parts[1]} declared twice", lineno, 1)
            current["index"][parts[1]] = len(current["worlds"])
            current["worlds"].append(parts[1])
        elif head == "rel":
            if len(parts) != 4:
                raise ParseError("expected 'rel LABEL W1 W2'", lineno, 1)
            if parts[1] == UNIVERSAL:
                raise ParseError(f"relation name {UNIVERSAL!r} is reserved", lineno, 5)
            pair = (_world(current, parts[2], lineno), _world(current, parts[3], lineno))
            current["rel"].setdefault(parts[1], []).append(pair)
        elif head in ("prop", "urel"):
            if len(parts) < 2:
                raise ParseError(f"expected '{head} NAME W...'", lineno, 1)
            ws = current[head].setdefault(parts[1], [])
            ws.extend(_world(current, w, lineno) for w in parts[2:])
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, 1)
    return [_build(b) for b in blocks]


def _world(block, name, lineno):
    try:
        return block["index"][name]
    except KeyError:
        raise ParseError(f"world {name} used before it was declared", lineno, 1) from None


def _build(b):
    try:
        if b["urel"] or b["kind"] == "structure":
            unary = dict(b["urel"])
            unary.update(b["prop"])
            return FOStructure(b["worlds"], unary, b["rel"], b["name"])
        if b["prop"] or b["kind"] == "model":
            return Model(b["worlds"], b["rel"], b["prop"], b["name"])
        return Frame(b["worlds"], b["rel"], b["name"])
    except StructureError as e:
        raise ParseError(f"in block {b['name']}: {e}") from None


def parse_structure(text):
    blocks = parse_structures(text)
    if len(blocks) != 1:
        raise ParseError(f"expected exactly one structure, found {len(blocks)}")
    return blocks[0]


def read_structures(path):
    with open(path) as fh:
        return parse_structures(fh.read())


def read_structure(path):
    with open(path) as fh:
        return parse_structure(fh.read())


def format_structure(obj):
    lines = []
    if isinstance(obj, FOStructure):
        lines.append(f"structure {obj.name}")
        unary, binary, word = obj.unary, obj.binary, "urel"
    else:
        lines.append(f"{'model' if isinstance(obj, Model) else 'frame'} {obj.name}")
        unary = obj.valuation if isinstance(obj, Model) else {}
        binary, word = obj.relations, "prop"
    names = obj.names
    lines.extend(f"world {nm}" for nm in names)
    for label in sorted(binary):
        lines.extend(f"rel {label} {names[a]} {names[b]}" for a, b in sorted(binary[label]))
    for p in sorted(unary):
        ws = sorted(unary[p])
        if ws:
            lines.append(f"{word} {p} " + " ".join(names[w] for w in ws))
    return "\n".join(lines) + "\n"


def write_structure(obj, path):
    with open(path, "w") as fh:
        fh.write(format_structure(obj))


def to_dot(obj):
    """DOT digraph; double circles mark worlds with a true proposition or unary relation."""
    if isinstance(obj, FOStructure):
        unary, binary = obj.unary, obj.binary
    else:
        unary = obj.valuation if isinstance(obj, Model) else {}
        binary = obj.relations
    lines = [f'digraph "{obj.name}" {{']
    for w, nm in enumerate(obj.names):
        marks = sorted(p for p, ws in unary.items() if w in ws)
        shape = "doublecircle" if marks else "circle"
        label = nm + (" : " + ",".join(marks) if marks else "")
        lines.append(f'  n{w} [shape={shape}, label="{label}"];')
    for label in sorted(binary):
        for a, b in sorted(binary[label]):
            lines.append(f'  n{a} -> n{b} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
