class InvalidParameterError(ValueError):
    """A deformation or field parameter lies outside its valid domain."""


class SingularTransformError(ValueError):
    pass


class DegenerateError(ValueError):
    """A quantity needed for the construction vanishes numerically."""


class GammaMismatchError(ValueError):
    pass


class PairingViolationError(ArithmeticError):
    pass
