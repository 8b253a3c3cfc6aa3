import glob


def task_test():
    return {'actions': ["nosetests hkr"]}


def task_flakes():
    """flakes on targets"""
    for py in glob.glob("hkr/*.py") + glob.glob("hkr/tests/*.py"):
        yield {'basename': 'Flakes',
               'name': py,
               'actions': ["pyflakes {}".format(py)],
               'file_dep': [py],
               'verbosity': 2}


def task_pep8():
    for py in glob.glob("hkr/*.py"):
        yield {'basename': 'pep8',
               'name': py,
               'actions': [['pep8',  py]],
               'file_dep': [py],
               'verbosity': 2}
