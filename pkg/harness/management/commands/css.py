from harness.runner import ExperimentCommand


class Command(ExperimentCommand):
    help = "Minimize the CSS functional from a config-selected start."
    command = "css"
