class OutOfFamilyError(ValueError):
    """
    Raised when a prime pair satisfies neither of the two condition classes.

    The first argument is the error payload, for example
    ``{'error': 'PAIR_OUT_OF_FAMILY', 'pair': [11, 13]}``.
    """


class LemmaViolationError(ArithmeticError):
    """
    Raised when a unit matches no factorization system, or a certificate
    fails its exact re-check.

    This is never swallowed: it means either a violated precondition or a
    counterexample to the decomposition lemmas.
    """


class AssumptionNotSetError(ValueError):
    """
    Raised when an inference rule is asked to run without the hypothesis
    flag it depends on.
    """


class InconsistentRanksError(ValueError):
    """
    Raised when a rank sequence changes after a witnessed stabilization.
    """


def error_payload(exception: Exception) -> dict:
    """
    Extract the error payload of an exception.

    This function returns the ``{'error': ...}`` dictionary carried as the
    first argument of the exception. Exceptions raised without a payload are
    reported as ``INVALID_REQUEST`` with their message.

    :param exception: The exception to inspect.
    :returns: A dictionary with at least the key ``error``.
    """

    if exception.args and isinstance(exception.args[0], dict):
        return exception.args[0]
    return {'error': 'INVALID_REQUEST', 'message': str(exception)}
