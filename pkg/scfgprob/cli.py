import argparse
import json
import sys
from fractions import Fraction

from tabulate import tabulate

from . import __version__
from .automata import PatternKind, build_pattern_dfa, figure_dfa, parse_dfa
from .core.analysis import analyze_grammar
from .core.balance import TripleVector, is_balanced_vector, max_balance_defect
from .core.exactmath import format_rational, to_fraction
from .core.solver import sample_strings
from .estimation import estimate, load_corpus, verify_estimated
from .grammar import bad_family, parse_grammar, to_snf
from .pipeline import compute_regular_probability, termination
from .product import intersect
from .utils.exceptions import InputError, ScfgProbError

MODE_CHOICES = ['adaptive', 'certified', 'certified-noncritical',
                'certified-tweaked']


def _eps(text):
    """ argparse type of --eps, an exact rational in (0, 1] """
    try:
        eps = to_fraction(text)
    except InputError as e:
        raise argparse.ArgumentTypeError(e.message)
    if not 0 < eps <= 1:
        raise argparse.ArgumentTypeError(f'eps must be in (0, 1], got {text}')
    return eps


def _natural(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f'{text} is not an integer')
    if value < 0:
        raise argparse.ArgumentTypeError(f'{text} is negative')
    return value


def _symbols(word):
    """ Pattern symbols, space separated or one symbol per character """
    return word.split() if ' ' in word else list(word)


def _build_parser():
    json_flag = argparse.ArgumentParser(add_help=False)
    json_flag.add_argument('--json', action='store_true',
                           help='print machine readable JSON')

    grammar = argparse.ArgumentParser(add_help=False)
    grammar.add_argument('--grammar', required=True, metavar='PATH',
                         help='grammar file')

    dfa = argparse.ArgumentParser(add_help=False)
    source = dfa.add_mutually_exclusive_group(required=True)
    source.add_argument('--dfa', metavar='PATH', help='DFA file')
    source.add_argument('--infix', metavar='W',
                        help='strings containing W')
    source.add_argument('--prefix', metavar='W', help='strings starting with W')
    source.add_argument('--exact', metavar='W', help='the string W')
    source.add_argument('--all', action='store_true', help='all strings')
    dfa.add_argument('--complete', action='store_true',
                     help='complete a partial DFA file with a sink state')

    solve = argparse.ArgumentParser(add_help=False)
    solve.add_argument('--eps', type=_eps, default=Fraction(1, 2**20),
                       metavar='RAT', help='precision in (0, 1], e.g. 1/1048576')
    solve.add_argument('--mode', choices=MODE_CHOICES, default='adaptive',
                       help='solver mode, default: adaptive')

    parser = argparse.ArgumentParser(
        prog='scfgprob',
        description='Probabilities of regular languages under stochastic '
                    'context-free grammars')
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    commands = parser.add_subparsers(dest='command', required=True)

    prob = commands.add_parser(
        'prob', parents=[json_flag, grammar, dfa, solve],
        help='probability that a nonterminal generates a string of the DFA')
    prob.add_argument('--start', metavar='NT',
                      help='nonterminal, default: the start symbol')
    prob.add_argument('--samples', type=_natural, default=0, metavar='N',
                      help='also estimate the probability from N sampled '
                           'derivations')
    prob.add_argument('--seed', type=_natural, default=None, metavar='N',
                      help='seed of the sampler')

    commands.add_parser('analyze', parents=[json_flag, grammar],
                        help='zero, one and critical variables of the grammar')
    commands.add_parser('termination', parents=[json_flag, grammar, solve],
                        help='termination probability of every nonterminal')
    commands.add_parser('product', parents=[json_flag, grammar, dfa],
                        help='product of the grammar in SNF and the DFA')
    commands.add_parser('snf', parents=[json_flag, grammar],
                        help='grammar in simple normal form')

    est = commands.add_parser(
        'estimate', parents=[json_flag],
        help='estimate rule probabilities from a derivation corpus')
    est.add_argument('--corpus', required=True, metavar='PATH',
                     help='JSON corpus file')

    fixtures = commands.add_parser(
        'fixtures', parents=[json_flag],
        help='grammar of the family with critical depth n')
    fixtures.add_argument('--n', type=_natural, default=1,
                          help='index of the grammar, default: 1')
    fixtures.add_argument('--automaton', action='store_true',
                          help='print the infix "aa" DFA instead')

    balance = commands.add_parser(
        'balance', parents=[json_flag],
        help='maximum balance defect of a triple indexed vector')
    balance.add_argument('--vector', required=True, metavar='PATH',
                         help='JSON triple vector file')
    return parser


def _read(path):
    try:
        with open(path) as f:
            return f.read()
    except OSError as e:
        raise InputError(f'can not read {path}: {e.strerror}')


def _load_json(path):
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as e:
        raise InputError(f'{path} is not valid JSON: {e}')


def _automaton(args, g):
    if args.dfa:
        return parse_dfa(_read(args.dfa), complete=args.complete)
    if args.all:
        return build_pattern_dfa(PatternKind.ALL, '', g.terminals)
    for kind in (PatternKind.INFIX, PatternKind.PREFIX, PatternKind.EXACT):
        word = getattr(args, kind.value.lower())
        if word is not None:
            return build_pattern_dfa(kind, _symbols(word), g.terminals)


def _grammar_output(text, args):
    return {'grammar': text} if args.json else text.rstrip('\n')


def _prob(args):
    g = parse_grammar(_read(args.grammar))
    d = _automaton(args, g)
    result = compute_regular_probability(g, d, A=args.start, eps=args.eps,
                                         mode=args.mode)
    out = result.to_json()
    if args.samples:
        estimate_ = sample_strings(g, result.start, d, args.samples,
                                   seed=args.seed)
        out['sampled'] = format_rational(estimate_)
        out['samples'] = args.samples
    if args.json:
        return out
    return tabulate(list(out.items()), tablefmt='plain')


def _analyze(args):
    report = analyze_grammar(parse_grammar(_read(args.grammar)))
    if args.json:
        return report.to_json()
    table = tabulate(report.to_dataframe(), headers='keys', tablefmt='github')
    return (f'{table}\n\ncritical depth: {report.critical_depth}\n'
            f'encoding size: {report.encoding_size}')


def _termination(args):
    g = parse_grammar(_read(args.grammar))
    results = termination(g, eps=args.eps, mode=args.mode)
    if args.json:
        return {A: result.to_json() for A, result in results.items()}
    rows = [[A, format_rational(r.lo), format_rational(r.hi), r.exact]
            for A, r in results.items()]
    return tabulate(rows, headers=['nonterminal', 'lo', 'hi', 'exact'],
                    tablefmt='github')


def _product(args):
    g = parse_grammar(_read(args.grammar))
    d = _automaton(args, g)
    return _grammar_output(intersect(to_snf(g), d).to_text(), args)


def _snf(args):
    g = parse_grammar(_read(args.grammar))
    return _grammar_output(to_snf(g).to_text(), args)


def _estimate(args):
    g = estimate(load_corpus(args.corpus))
    verdict = verify_estimated(g)
    if args.json:
        return {'grammar': g.to_text(), **verdict}
    return (g.to_text() + f'# consistent: {verdict["consistent"]}\n'
            f'# noncritical: {verdict["noncritical"]}')


def _fixtures(args):
    if args.automaton:
        text = figure_dfa().to_text()
        return {'dfa': text} if args.json else text.rstrip('\n')
    return _grammar_output(bad_family(args.n).to_text(), args)


def _balance(args):
    y = TripleVector.from_json(_load_json(args.vector))
    defect = max_balance_defect(y)
    if args.json:
        return {'max_balance_defect': format_rational(defect),
                'balanced': is_balanced_vector(y)}
    return f'max balance defect: {format_rational(defect)}'


COMMANDS = {'prob': _prob, 'analyze': _analyze, 'termination': _termination,
            'product': _product, 'snf': _snf, 'estimate': _estimate,
            'fixtures': _fixtures, 'balance': _balance}


def run_cli(argv=None, stdout=None):
    """ Run the command line interface

    Parameters
    ----------
    argv : list of str, optional, default: None
        the arguments without the program name, sys.argv[1:] if None
    stdout : file, optional, default: None
        stream for the output, sys.stdout if None

    Returns
    -------
    int
        exit code, 0 on success, 1 on an error of the computation (the
        error is printed as a JSON object) and 2 on a usage error
    """
    stdout = sys.stdout if stdout is None else stdout
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return e.code

    try:
        out = COMMANDS[args.command](args)
    except ScfgProbError as e:
        error = {'error': type(e).__name__, 'message': e.message}
        if getattr(e, 'lineno', None) is not None:
            error['line'] = e.lineno
        print(json.dumps(error), file=stdout)
        return 1

    if isinstance(out, str):
        print(out, file=stdout)
    else:
        print(json.dumps(out, indent=2), file=stdout)
    return 0


def main():
    sys.exit(run_cli())
