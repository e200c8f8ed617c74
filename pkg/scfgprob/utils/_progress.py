import sys

class ProgressBar:
    """ Simple progress bar on stderr for long sampling loops

    Parameters
    ----------
    number : int
        total number of steps
    task : str
        text in front of the progress bar, for instance *Sampling*
    max_width : int, optional, default: 40
        maximum width of the bar in characters
    disable : bool, optional, default: False
        if True nothing is printed, convenient to silence the bar
        without changing the calling code
    """

    def __init__(self, number, task, max_width=40, disable=False):
        """ See help(ProgressBar) for more info """
        self.total = max(int(number), 1)
        self.task = task
        self.width = min(self.total, max_width)
        self.disable = disable
        self.file = sys.stderr

        self.done = 0
        self._filled = -1

        self._draw()

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        self.finish()
        return False

    def _draw(self):
        """ Redraw the bar when the number of filled characters changes """
        filled = self.done*self.width//self.total
        if self.disable or filled == self._filled:
            return
        self._filled = filled

        bar = '[' + '='*filled + '.'*(self.width - filled) + ']'
        print(f'\r{self.task} {bar} {self.done}/{self.total}',
              file=self.file, end='')

    def next(self, steps=1):
        """ Advance the progress bar

        Parameters
        ----------
        steps : int, optional, default: 1
            number of completed steps to add
        """
        self.done = min(self.done + steps, self.total)
        self._draw()

    def finish(self):
        """ Complete the progress bar and end the line """
        if self.disable:
            return
        self.done = self.total
        self._filled = -1
        self._draw()
        self.file.write('\n')
