from harness.runner import ExperimentCommand


class Command(ExperimentCommand):
    help = "Monte Carlo energy breakdown, norm ratio and density at one particle number."
    command = "vmc"
