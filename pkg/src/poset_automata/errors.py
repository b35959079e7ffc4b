"""Exception types shared across the toolkit.

Exit-code mapping used by the CLI: InputError -> 2, ResourceLimitError -> 3.
"""


class InputError(ValueError):
    """Malformed input or violated operation precondition."""


class ResourceLimitError(RuntimeError):
    """A configured resource cap was exceeded; the message names the cap."""


class SimulationError(InputError):
    """A Turing-machine run left the bounded tape."""
