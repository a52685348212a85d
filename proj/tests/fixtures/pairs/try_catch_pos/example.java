Thread.sleep(500);
refresh();
