from fractions import Fraction

from .exceptions import InputError

MODES = ['certified-noncritical', 'certified-tweaked', 'adaptive']

def _is_natural(value, minimum=1):
    return (isinstance(value, int) and not isinstance(value, bool)
            and value >= minimum)

def _is_mode(value):
    # accept the SolveMode enum as well as its string value
    return getattr(value, 'value', value) in MODES

def _is_eps(value):
    if isinstance(value, (bool, float)):
        return False
    try:
        eps = Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        return False
    return 0 < eps <= 1

def _newton_vkwargs(mode):
    """ Valid kwargs table for the configuration of Newton's method

    Construct a dictionary with all the valid kwargs for a solver
    configuration in the given mode.

    Parameters
    ----------
    mode : {'certified-noncritical', 'certified-tweaked', 'adaptive'}
        mode of the solver

    Returns
    -------
    vkwargs : dict
        dictionary with all the valid kwargs for the mode
    """
    mode = getattr(mode, 'value', mode)
    certified = mode != 'adaptive'

    # vkwargs for every mode
    vkwargs = {
        'mode': {'Default': 'adaptive',
                 'Validator': _is_mode,
                 'Correct': 'str and {' + ', '.join(MODES) + '}',
                 'Required': True},

        'h': {'Default': None,
              'Validator': lambda value: _is_natural(value),
              'Correct': 'int >= 1',
              'Required': certified},

        'max_iters': {'Default': None,
                      'Validator': lambda value: _is_natural(value, minimum=0),
                      'Correct': 'int >= 0',
                      'Required': False},

        'eps': {'Default': None,
                'Validator': _is_eps,
                'Correct': 'rational (int, Fraction or str) in (0, 1]',
                'Required': mode != 'certified-noncritical'},
    }

    # only vkwargs for the adaptive mode
    vkwargs_adaptive = {
        'initial_h': {'Default': None,
                      'Validator': lambda value: _is_natural(value),
                      'Correct': 'int >= 1',
                      'Required': False},

        'max_h': {'Default': 4096,
                  'Validator': lambda value: _is_natural(value),
                  'Correct': 'int >= 1',
                  'Required': True},

        'decomposed': {'Default': True,
                       'Validator': lambda value: isinstance(value, bool),
                       'Correct': 'bool',
                       'Required': True},
    }

    if not certified:
        vkwargs.update(vkwargs_adaptive)

    return vkwargs

def _validate_kwargs(params, vkwargs):
    """ Validate if all required input is given

    Parameters
    ---------
    params : dict
        dictionary with the processed kwargs
    vkwargs : dict
        dictionary with the valid kwargs, default values and a validator
    """
    for key, value in params.items():
        if vkwargs[key]['Required'] and value is None:
            raise InputError(
                f'{key} is a required parameter for mode {params["mode"]}')

def _process_kwargs(kwargs, vkwargs):
    """ Process the kwargs

    Check if the input kwarg is in the valid kwargs table and that the
    value has the correct type. Furthermore, validate if all kwargs for
    the mode are given.

    Parameters
    ----------
    kwargs : dict
        dictionary with kwargs and their values
    vkwargs : dict
        dictionary with the valid kwargs, default values and a validator

    Returns
    -------
    dict
        dictionary with the kwargs and their values, and default values

    Raises
    ------
    InputError
        If a kwarg is unknown, has an invalid value or a required kwarg
        is missing
    """
    # initialize params from vkwargs
    params = {key: value['Default'] for key, value in vkwargs.items()}

    for key, value in kwargs.items():
        if key not in vkwargs:
            valid = ', '.join(vkwargs)
            raise InputError(
                f'{key} is not a valid kwarg for mode {params["mode"]}, '
                f'valid kwargs are {valid}')

        if value is None and not vkwargs[key]['Required']:
            params[key] = value
        elif vkwargs[key]['Validator'](value):
            params[key] = value
        else:
            incorrect = type(value).__name__
            correct = vkwargs[key]['Correct']
            raise InputError(
                (f'{incorrect} {value!r} is invalid for kwarg {key}, must be '
                 f'{correct}'))

    # validate if all required parameters are given
    _validate_kwargs(params, vkwargs)

    return params
