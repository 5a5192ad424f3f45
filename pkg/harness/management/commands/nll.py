from harness.runner import ExperimentCommand


class Command(ExperimentCommand):
    help = "NLL identity and Hardy checks on random polynomial pairs."
    command = "nll"
