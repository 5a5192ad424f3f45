from harness.runner import ExperimentCommand


class Command(ExperimentCommand):
    help = "Multistart estimate of the critical coupling gamma*(beta)."
    command = "gammastar"
