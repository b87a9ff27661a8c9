from celery import Celery

'''
Basic Celery app defined for the verifier.
It reads all the other settings from qhopf.settings
(the CELERY_ prefixed names)
'''

verifier_app = Celery("qhopf")

verifier_app.config_from_object("qhopf.settings", namespace="CELERY")
