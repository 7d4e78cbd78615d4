import logging


class Service(object):
    """
    A unit of work driven by a management command.

    Subclasses implement ``run()`` and report progress through ``self.log``,
    which defaults to a ``ptaseg.services.<name>`` logger.
    """
    name = ''

    def __init__(self, log=None):
        if log is None:
            log = logging.getLogger('ptaseg.services.%s' % self.name)
        self.log = log

    def run(self):
        raise NotImplementedError
