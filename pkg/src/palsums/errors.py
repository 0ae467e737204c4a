class ContractError(ValueError):
    """An operation was called with arguments outside its contract."""


class RejectedInputError(ValueError):
    """A word contains a symbol the automaton's alphabet does not have."""


class ResourceLimitError(RuntimeError):
    """A construction exceeded its configured state budget."""

    def __init__(self, what, budget):
        super().__init__(f"{what} exceeded the state budget of {budget} states")
        self.what = what
        self.budget = budget
