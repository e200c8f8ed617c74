from .exceptions import NotSupportedError

class Logged:
    """ Mixin for objects with a logger of messages and warnings

    The logger is a dict with the keys 'INFO' and 'WARNING', each with a
    list of messages, filled while the object is computed.
    """

    def _new_logger(self):
        self.logger = {'INFO': [], 'WARNING': []}

    def _info(self, msg):
        self.logger['INFO'].append(msg)

    def _warning(self, msg):
        self.logger['WARNING'].append(msg)

    def print_logger(self, level='warnings'):
        """ Print messages and warnings from the logger

        Parameters
        ----------
        level : {'info', 'warnings'}, optional, default: 'warnings'
            specify print level, highest level is warnings and lowest
            level is info. Note that the info level will also print all
            warnings
        """
        if level.lower() not in ['warnings', 'info']:
            raise NotSupportedError(
                f'{level} not implemented, must be info or warnings')

        for type_, messages in self.logger.items():
            if level.lower() == 'warnings' and type_ == 'INFO':
                continue
            print(f'{type_}:')
            if messages:
                for message in messages:
                    print(message)
            else:
                print(f'no {type_.lower()} messages in log')
            print()
