from setuptools import setup

setup(name = 'hkr',
      version='0.1',
      description='exact algebra and verification suites for de Rham '
      'complexes in characteristic p',
      license='GPL',
      platforms=['linux'],
      packages=['hkr', 'hkr.tests'],
      scripts=['bin/hkrcheck'],
      test_suite='nose.collector',
      long_description='''Witt vectors, formal group laws, restricted Lie
algebras, Bocksteins and spectral sequences over finite rings, with a
command line tool that checks the identities relating them.''',
      install_requires=[
          'nose',
          "numpy",
          "sympy",
          ],)
