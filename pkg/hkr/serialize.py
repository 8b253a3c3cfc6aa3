"""Properties for serializing reports."""
import json
import numbers

import numpy as np

from .ring import Rational, ModPrimePower, rational_str
from .verifier import Report


def jsonable(obj):
    """Witness data as ints, strings, lists and dicts.

    Rationals become 'num/den' strings; tuples become lists; dict keys
    become strings.
    """
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (numbers.Integral, np.integer)):
        return int(obj)
    if isinstance(obj, Rational):
        return rational_str(obj)
    if isinstance(obj, ModPrimePower):
        return int(obj.value)
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, dict):
        return dict((str(k), jsonable(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(x) for x in obj]
        return sorted(items) if isinstance(obj, (set, frozenset)) else items
    if obj is None or isinstance(obj, str):
        return obj
    if hasattr(obj, 'todict'):
        return jsonable(obj.todict())
    return str(obj)


def report_json(self):
    """Return a compact json representation."""
    return json.dumps(self.todict(), sort_keys=True)

setattr(Report, 'json', property(report_json))


def report_jsonpp(self):
    """Return a pretty-printed json representation."""
    return json.dumps(self.todict(), sort_keys=True, indent=4)

setattr(Report, 'jsonpp', property(report_jsonpp))


def report_text(self):
    """Return a fixed-width table: status, check, anchor."""
    rows = [('status', 'check', 'anchor')]
    for c in self.checks:
        rows.append((c.status.upper(), '{}.{}'.format(c.suite, c.name),
                     c.anchor))
    width = max(len(r[1]) for r in rows)
    lines = ['{:<6}  {:<{w}}  {}'.format(a, b, c, w=width)
             for a, b, c in rows]
    lines.append('')
    summary = '{}: {} ({} checks, {} failed)'.format(
        self.suite, self.status.upper(), len(self.checks),
        len(self.failures))
    if self.elapsed_ms is not None:
        summary += ' in {} ms'.format(self.elapsed_ms)
    lines.append(summary)
    return '\n'.join(lines)

setattr(Report, 'text', property(report_text))
