def run_setup_hooks(*args, **kwargs):
    '''
    Register the structure handlers, the order decides which handler
    answers first in the orchestrator lookup
    '''
    from .quasihopf.handler import QuasiHopfHandler
    from .yd.handler import YDHandler
    QuasiHopfHandler.register()
    YDHandler.register()
