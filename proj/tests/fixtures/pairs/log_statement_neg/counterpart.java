connect();
session.start();
