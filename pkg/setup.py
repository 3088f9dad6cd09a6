#!/usr/bin/env python

from setuptools import setup

from divsamp import __version__ as VERSION

setup(name='divsamp',
      version=VERSION,
      description=("""Diversity-based minibatch sampling across domains"""
                   """ with k-DPP and k-means++ samplers."""),
      license="GPLv2+",
      scripts=['bin/divsamp'],
      packages=['divsamp', 'divsamp.samplers'],
      install_requires=['numpy>=1.17', 'scipy>=1.2', 'six'],
      tests_require=['pytest'],
      )


# vim: set et ts=4 sw=4 :
