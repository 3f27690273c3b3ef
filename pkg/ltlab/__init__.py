"""Top-level package for ltlab."""
__author__ = """Ênio Rodrigues"""
__email__ = 'eniocc@gmail.com'
__version__ = '0.1.0'

from ltlab.sample.Sample import *
from ltlab.model.Padic import *
from ltlab.model.Series import *
from ltlab.model.LubinTate import *
from ltlab.model.Chareps import *
from ltlab.model.PhiGamma import *
from ltlab.model.Dist import *
from ltlab.model.CohModel import *
from ltlab.model.Recip import *
from ltlab.core.Config import *
from ltlab.core.Core import *
