"""Error taxonomy shared across the checker pipeline."""

from __future__ import annotations


class FwhError(Exception):
    """Base class; `judgement` and `rule` feed the diagnostics renderer."""

    judgement = "internal"
    rule: str | None = None

    def __init__(self, message: str, rule: str | None = None):
        super().__init__(message)
        self.message = message
        if rule is not None:
            self.rule = rule


class KindError(FwhError):
    judgement = "kinding"


class UnboundVariable(KindError):
    rule = "kind-var"


class PolarityViolation(KindError):
    rule = "kind-var"


class KindMismatch(KindError):
    rule = "kind-app"


class NotAnArrow(KindError):
    rule = "kind-app"


class ImpureKind(KindError):
    rule = "kind-c"


class SubtypeError(FwhError):
    judgement = "subtyping"


class ContinuityError(FwhError):
    """Failure of the semi-continuity judgement.

    `attempts` lists (rule, reason) pairs for the outermost constructor at
    which no rule applied; `cause` chains to an inner failure when a
    structural premise was the blocker.
    """

    judgement = "semicont"

    def __init__(self, message, subject=None, attempts=(), cause=None):
        super().__init__(message)
        self.subject = subject
        self.attempts = tuple(attempts)
        self.cause = cause

    def trail(self):
        node, out = self, []
        while node is not None:
            out.append(node)
            node = node.cause
        return out

    @property
    def rule(self):
        leaf = self.trail()[-1]
        if leaf.attempts:
            return leaf.attempts[-1][0]
        return None


class AdmissibilityError(FwhError):
    judgement = "admissibility"

    def __init__(self, message, shape_error=None, cont_error=None):
        super().__init__(message)
        self.shape_error = shape_error
        self.cont_error = cont_error

    @property
    def rule(self):
        if self.cont_error is not None:
            return self.cont_error.rule
        return "fix-shape"


class TypingError(FwhError):
    judgement = "typing"


class CannotInfer(TypingError):
    rule = "t-var"


class TypeMismatch(TypingError):
    rule = "t-sub"


class NotAFunction(TypingError):
    rule = "t-app"


class ArityMismatch(TypingError):
    rule = "t-app"


class UnknownConstant(TypingError):
    rule = "t-c"


class NotAdmissible(TypingError):
    judgement = "admissibility"

    def __init__(self, message, cause: AdmissibilityError):
        super().__init__(message)
        self.cause = cause

    @property
    def rule(self):
        return self.cause.rule


class ParseError(FwhError):
    judgement = "syntax"

    def __init__(self, message, line: int, col: int, expected=()):
        super().__init__(message)
        self.line = line
        self.col = col
        self.expected = tuple(expected)


class EvalError(FwhError):
    judgement = "evaluation"
