class ZxError(ValueError):
    """Базовая ошибка оптимизатора."""


class DiagramError(ZxError):
    pass


class RewriteError(ZxError):
    pass


class QasmParseError(ZxError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (строка {line}, позиция {column})")
        self.line = line
        self.column = column


class FlowError(ZxError):
    pass


class ExtractionError(ZxError):
    pass


class OracleError(ZxError):
    pass


class CircuitError(ZxError):
    pass
