from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Verdict:
    """Answer to a validity-style query, with a falsifying witness when negative.

    ``model`` and ``world`` locate the witness; for frame validity the model
    is the frame under the falsifying valuation.  ``details`` holds anything
    query specific (e.g. which reduction failed).
    """

    answer: bool
    model: object = None
    world: int = None
    details: dict = field(default_factory=dict)

    def __bool__(self):
        return self.answer

    @property
    def witness(self):
        if self.model is None:
            return None
        return self.model, self.world
