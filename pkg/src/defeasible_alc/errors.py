"""Exceptions shared by the reasoning modules."""


class ResourceLimitExceeded(RuntimeError):
    """The tableau used up its expansion budget before reaching a verdict.

    Never to be read as "unsatisfiable": the question is simply undecided.
    """

    def __init__(self, budget: int):
        super().__init__(f"tableau expansion budget of {budget} exhausted")
        self.budget = budget
