import sentry_sdk
from flask import Flask
from flask_cors import CORS
from sentry_sdk.integrations.flask import FlaskIntegration

import config
from blueprints.checks import checks
from blueprints.figures import figures
from blueprints.observables import observables
from blueprints.sweeps import sweeps
from cli import pbg
from lib import errors
from lib.logs import init_logging

if config.SENTRY_DSN is not None:
    sentry_sdk.init(dsn=config.SENTRY_DSN, environment=config.ENVIRONMENT, integrations=[FlaskIntegration()])

# app init
app = Flask(__name__)

CORS(app)

# logging init
init_logging()


# routes
@app.route("/", methods=["GET"])
def hello_world():
    return "PBG waveguide simulator"


app.register_blueprint(figures, url_prefix="/figures")
app.register_blueprint(sweeps, url_prefix="/sweeps")
app.register_blueprint(observables, url_prefix="/observables")
app.register_blueprint(checks, url_prefix="/checks")

errors.register_error_handlers(app)

app.cli.add_command(pbg)

if __name__ == "__main__":
    app.run()
