import os

LOG_LEVEL = os.environ.get('LOG_LEVEL', 'INFO')
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
LOG_DIR = os.environ.get('LOG_DIR', 'logs')
LOG_FILENAME = os.environ.get('LOG_FILENAME', 'app.log')
LOG_FILE = os.path.join(LOG_DIR, LOG_FILENAME)

if 'DYNO' in os.environ or 'LOG_TO_STDOUT' in os.environ:
    LOG_TO_STDOUT = True
else:
    LOG_TO_STDOUT = False

EMBED_START_PRECISION = int(os.environ.get('EMBED_START_PRECISION', 128))
EMBED_MAX_PRECISION = int(os.environ.get('EMBED_MAX_PRECISION', 1 << 18))

MAX_CONDUCTOR_TOTIENT = int(os.environ.get('MAX_CONDUCTOR_TOTIENT', 1 << 20))

SURVEY_JOBS = int(os.environ.get('SURVEY_JOBS', 1))
SURVEY_BOUND = int(os.environ.get('SURVEY_BOUND', 100))
TOWER_LEVELS = int(os.environ.get('TOWER_LEVELS', 4))

REPORT_DIR = os.environ.get('REPORT_DIR', 'reports')

NO_COLOR = 'NO_COLOR' in os.environ
