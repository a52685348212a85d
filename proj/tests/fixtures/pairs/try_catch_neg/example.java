try {
  Thread.sleep(500);
} catch (InterruptedException e) {
  return;
}
