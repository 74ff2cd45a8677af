class TwistedDPDException(Exception): ...

class InvalidParametersError(TwistedDPDException): ...

class ModulusMismatchError(TwistedDPDException): ...

class ParameterMismatchError(TwistedDPDException): ...

class DivisionByZeroError(TwistedDPDException, ZeroDivisionError): ...

class SupportError(TwistedDPDException): ...

class SizeGuardError(TwistedDPDException): ...

class SingularCirculantError(TwistedDPDException): ...

class InconsistentPublicKeyError(TwistedDPDException): ...

class ResamplingExhaustedError(TwistedDPDException): ...

class ParseError(TwistedDPDException): ...


class AttackFailed(TwistedDPDException):
    """Public element has a singular M_c or M_d, so the attack cannot start."""

    def __init__(self, singular: str):
        super().__init__(f"M_{singular} is singular")
        self.singular = singular
