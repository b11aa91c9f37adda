import logging
from dataclasses import dataclass, field
from datetime import datetime

import numpy as np
import pandas as pd

logger = logging.getLogger(__name__)


def plain(value):
    """Convert numpy scalars inside nested tuples/lists to Python ints"""
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, (tuple, list)):
        return tuple(plain(v) for v in value)
    return value


def format_witness(witness):
    """Render a witness as a single whitespace-free token"""
    if witness is None:
        return ""
    if isinstance(witness, str):
        return witness.replace(" ", "")
    return repr(plain(witness)).replace(" ", "")


@dataclass(frozen=True)
class Check:
    id: str
    passed: bool
    witness: object = None
    detail: str = ""

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"CHECK {self.id} {status}"
        if not self.passed and self.witness is not None:
            text += f" {format_witness(self.witness)}"
        return text


@dataclass(frozen=True)
class Note:
    """Status-only statement; never affects the verdict"""
    id: str
    holds: bool
    witness: object = None
    detail: str = ""

    def line(self):
        status = "HOLDS" if self.holds else "FAILS"
        text = f"NOTE {self.id} {status}"
        if not self.holds and self.witness is not None:
            text += f" {format_witness(self.witness)}"
        return text


@dataclass
class Report:
    name: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def add(self, check_id, passed, witness=None, detail=""):
        check = Check(check_id, bool(passed), plain(witness), detail)
        self.checks.append(check)
        if not check.passed:
            logger.debug(f"check {check_id} failed at {witness}")
        return check

    def note(self, note_id, holds, witness=None, detail=""):
        self.notes.append(Note(note_id, bool(holds), plain(witness), detail))

    def extend(self, other):
        self.checks.extend(other.checks)
        self.notes.extend(other.notes)
        self.facts.update(other.facts)
        return self

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def failures(self):
        return [check for check in self.checks if not check.passed]

    def get(self, check_id):
        for check in self.checks:
            if check.id == check_id:
                return check
        raise KeyError(check_id)

    def to_lines(self):
        checks = sorted(self.checks, key=lambda c: c.id)
        notes = sorted(self.notes, key=lambda n: n.id)
        return [c.line() for c in checks] + [n.line() for n in notes]

    def to_frame(self):
        rows = [
            {
                'check': c.id,
                'status': 'PASS' if c.passed else 'FAIL',
                'witness': format_witness(c.witness) if not c.passed else '',
                'detail': c.detail,
            }
            for c in sorted(self.checks, key=lambda c: c.id)
        ]
        return pd.DataFrame(rows, columns=['check', 'status', 'witness', 'detail'])

    def to_dict(self):
        return {
            'name': self.name,
            'report_generated': datetime.now().isoformat(),
            'passed': self.passed,
            'total_checks': len(self.checks),
            'failed_checks': len(self.failures),
            'checks': [
                {'id': c.id, 'passed': c.passed, 'witness': c.witness, 'detail': c.detail}
                for c in sorted(self.checks, key=lambda c: c.id)
            ],
            'notes': [
                {'id': n.id, 'holds': n.holds, 'witness': n.witness, 'detail': n.detail}
                for n in sorted(self.notes, key=lambda n: n.id)
            ],
            'facts': self.facts,
        }
