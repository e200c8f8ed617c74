import pyparsing as pp

from .exceptions import GrammarSyntaxError

# symbol names, may not start with '-' so 'A->a' is not read as one name
NAME = pp.Regex(r'[^\s\[\]#:>\-][^\s\[\]#:>]*')
RATIONAL = pp.Regex(r'[+-]?(\d+(/\d+)?|\d*\.\d+)')

HEADER = (pp.Regex(r'[A-Za-z_]+')('key') + pp.Suppress(':')
          + pp.Group(pp.ZeroOrMore(NAME))('names'))

RULE = (NAME('lhs') + pp.Suppress('->') + pp.Group(pp.ZeroOrMore(NAME))('body')
        + pp.Optional(pp.Suppress('[') + RATIONAL('weight') + pp.Suppress(']')))

TRANSITION = NAME('source') + NAME('symbol') + NAME('target')

def _strip_comment(line):
    return line.split('#', 1)[0].strip()

def parse_sections(text, headers, table, row, row_format):
    """ Parse a line oriented file with headers followed by a table

    Every non-empty line (after removing '#' comments) before the table
    header is a header line '<key>: <name>*', every line after it a row
    parsed with the given pyparsing expression.

    Parameters
    ----------
    text : str
        content of the file
    headers : list of str
        keys of the header lines that must be present
    table : str
        key of the line that starts the table, e.g. 'rules'
    row : pyparsing.ParserElement
        expression for one row of the table
    row_format : str
        description of a row, used in error messages

    Returns
    -------
    fields : dict
        for each header the tuple (lineno, list of names)
    rows : list
        list of (lineno, pyparsing.ParseResults) for each row

    Raises
    ------
    GrammarSyntaxError
        If a line can not be parsed, a header is unknown or repeated,
        or a header is missing
    """
    fields = {}
    rows = []
    in_table = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line:
            continue

        if in_table:
            try:
                rows.append((lineno, row.parse_string(line, parse_all=True)))
            except pp.ParseException:
                raise GrammarSyntaxError(
                    f'invalid row "{line}", expected {row_format}', lineno)
            continue

        try:
            result = HEADER.parse_string(line, parse_all=True)
        except pp.ParseException:
            raise GrammarSyntaxError(
                f'invalid line "{line}", expected "<key>: <names>" with key '
                f'in {headers + [table]}', lineno)

        key, names = result['key'], result['names'].as_list()
        if key == table:
            if names:
                raise GrammarSyntaxError(
                    f'"{table}:" must be on a line of its own', lineno)
            in_table = True
        elif key not in headers:
            raise GrammarSyntaxError(
                f'unknown key "{key}", valid keys are {headers + [table]}',
                lineno)
        elif key in fields:
            raise GrammarSyntaxError(f'"{key}:" is given twice', lineno)
        else:
            fields[key] = (lineno, names)

    for key in headers:
        if key not in fields:
            raise GrammarSyntaxError(f'missing "{key}:" line')
    if not in_table:
        raise GrammarSyntaxError(f'missing "{table}:" line')

    return fields, rows
