import os
'''
order of the cyclotomic field Q(zeta_L) used for every scalar.
12 covers the roots of unity of order 2, 3, 4 and 6
'''
QHOPF_CYCLOTOMIC_ORDER = int(os.getenv("QHOPF_CYCLOTOMIC_ORDER", 12))

'''
seed and sample sizes of the property generators (twists, cochains)
'''
QHOPF_SEED = int(os.getenv("QHOPF_SEED", 20221))
QHOPF_TWIST_SAMPLES = int(os.getenv("QHOPF_TWIST_SAMPLES", 25))
QHOPF_COCHAIN_SAMPLES = int(os.getenv("QHOPF_COCHAIN_SAMPLES", 100))

'''
braiding formula used by op_cop. Disabled unless explicitly configured;
the only known candidate is "coaction_action": c(m⊗n) = m_[-1]·n ⊗ m_[0]
'''
QHOPF_BRAIDING = os.getenv("QHOPF_BRAIDING") or None

'''
variants adopted where the printed formulas disagree with their derivation
'''
QHOPF_PSI_VARIANT = os.getenv("QHOPF_PSI_VARIANT", "as_printed")
QHOPF_C6_FLOOR_DIVISOR = int(os.getenv("QHOPF_C6_FLOOR_DIVISOR", 6))

QHOPF_LOG_LEVEL = os.getenv("QHOPF_LOG_LEVEL", "WARNING")

'''
main settings to handle the celery rate.
The execution requests are kept in the memory of the verifier process,
so the task chain always runs eagerly inside it
'''
QHOPF_GLOBAL_RATE_LIMIT = os.getenv("QHOPF_GLOBAL_RATE_LIMIT", 5)
QHOPF_RADICAL_RATE_LIMIT = os.getenv("QHOPF_RADICAL_RATE_LIMIT", 5)

CELERY_TASK_ALWAYS_EAGER = True
CELERY_TASK_EAGER_PROPAGATES = True
CELERY_BROKER_URL = "memory://"
