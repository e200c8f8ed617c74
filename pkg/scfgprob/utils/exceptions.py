import warnings

# define errors
class ScfgProbError(Exception):
    """ Base class of all errors raised by scfgprob

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__

    def __init__(self, message):
        self.message = message


class InputError(ScfgProbError):
    """ Exception raised for errors in the input

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class NotSupportedError(ScfgProbError):
    """ Exception raised when input is not supported

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class GrammarSyntaxError(InputError):
    """ Exception raised for a malformed line in a grammar or DFA file

    Attributes
    ----------
    message
        explanation of the error, prefixed with the line number
    lineno
        line number (1-based) of the offending line, None if unknown
    """
    __module__ = Exception.__module__

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f'line {lineno}: {message}'
        super().__init__(message)
        self.lineno = lineno


class UndeclaredSymbolError(InputError):
    """ Exception raised if a rule uses a symbol that is not declared

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class NonpositiveWeightError(InputError):
    """ Exception raised if a rule weight is zero or negative

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class DuplicateTransitionError(InputError):
    """ Exception raised if a DFA defines a transition twice

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class PartialTransitionError(InputError):
    """ Exception raised if the transition function of a DFA is not total

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class UnknownSymbolError(InputError):
    """ Exception raised for a state or symbol unknown to a DFA

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class UnknownNonterminalError(InputError):
    """ Exception raised for a nonterminal that is not in the grammar

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class AlphabetMismatchError(InputError):
    """ Exception raised if grammar terminals are not in the DFA alphabet

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class InvalidDerivationError(InputError):
    """ Exception raised if a derivation in a corpus is not a complete
    leftmost derivation of the skeleton grammar

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class SingularMatrixError(ScfgProbError):
    """ Exception raised if a linear system has no unique solution

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class SingularJacobianError(ScfgProbError):
    """ Exception raised if I - B(z) is singular in a Newton step

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class NotBalancedError(ScfgProbError):
    """ Exception raised if a triple-indexed vector or matrix is not
    balanced where a balanced one is required

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class NotPpsError(ScfgProbError):
    """ Exception raised if a polynomial system is not probabilistic

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class NotScfgError(ScfgProbError):
    """ Exception raised if a grammar is not stochastic

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class NotProperError(ScfgProbError):
    """ Exception raised if a grammar is not a proper SCFG

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class NoInternalLRuleError(ScfgProbError):
    """ Exception raised if a bottom-critical SCC has no unit rule with
    both sides inside the SCC

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class ConsistencyError(ScfgProbError):
    """ Exception raised if a computed result fails its own check

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class IterationBudgetExceededError(ScfgProbError):
    """ Exception raised if the adaptive solver exceeds its budget

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class UnusedRuleError(ScfgProbError):
    """ Exception raised if a skeleton rule is used by no derivation

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class UnusedNonterminalError(ScfgProbError):
    """ Exception raised if a skeleton nonterminal occurs in no derivation

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


class ZeroDenominatorError(ScfgProbError):
    """ Exception raised if an estimated rule probability has a zero
    denominator

    Attributes
    ----------
    message
        explanation of the error
    """
    __module__ = Exception.__module__


# define warnings
class SolverWarning(Warning):
    """ Warning raised by the Newton solver """

    def __init__(self, msg):
        self.message = msg


# monkeypatch warning format
def _custom_formatwarning(msg, category, *args, **kwargs):
    # ignore everything except the message
    return f'{category.__name__}: {msg} \n'

def user_warning(msg):
    """ show user warning """
    warnings.formatwarning = _custom_formatwarning
    warnings.warn(msg, category=UserWarning)

def solver_warning(msg):
    """ Show warning of the solver """
    warnings.formatwarning = _custom_formatwarning
    warnings.warn(msg, category=SolverWarning)
