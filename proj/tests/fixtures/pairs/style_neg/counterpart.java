if (ready) {
  start();
  notifyAll();
}
