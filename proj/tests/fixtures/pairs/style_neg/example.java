if (ready) start();
