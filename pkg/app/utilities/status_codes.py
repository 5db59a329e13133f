class StatusCodes:
    """
    Represents the HTTP status codes that can be returned by the API.

    :ivar OK: The request was successful.
    :ivar BAD_REQUEST: The query parameters were missing or invalid.
    :ivar NOT_FOUND: The resource was not found.
    :ivar METHOD_NOT_ALLOWED: The resource does not accept the method.
    :ivar UNPROCESSABLE_ENTITY: The request was valid but an exact check
                                failed while computing the answer.
    :ivar INTERNAL_SERVER_ERROR: An internal server error occurred.
    """

    OK = 200
    BAD_REQUEST = 400
    NOT_FOUND = 404
    METHOD_NOT_ALLOWED = 405
    UNPROCESSABLE_ENTITY = 422
    INTERNAL_SERVER_ERROR = 500
